//! Porter stemming algorithm.
//!
//! Follows the canonical reference implementation (including the two
//! published departures from the 1980 paper: `bli -> ble` instead of
//! `abli -> able`, and the added `logi -> log` rule). Words shorter than
//! three letters, and words containing anything other than ASCII
//! lowercase letters, are returned unchanged.

struct Stemmer {
    b: Vec<u8>,
    /// Index of the last letter of the current stem.
    k: i32,
    /// Scratch index set by `ends`.
    j: i32,
}

impl Stemmer {
    fn cons(&self, i: i32) -> bool {
        match self.b[i as usize] {
            b'a' | b'e' | b'i' | b'o' | b'u' => false,
            b'y' => {
                if i == 0 {
                    true
                } else {
                    !self.cons(i - 1)
                }
            }
            _ => true,
        }
    }

    /// Number of consonant sequences in b[0..=j]: the "measure" m.
    fn m(&self) -> i32 {
        let mut n = 0;
        let mut i = 0;
        loop {
            if i > self.j {
                return n;
            }
            if !self.cons(i) {
                break;
            }
            i += 1;
        }
        i += 1;
        loop {
            loop {
                if i > self.j {
                    return n;
                }
                if self.cons(i) {
                    break;
                }
                i += 1;
            }
            i += 1;
            n += 1;
            loop {
                if i > self.j {
                    return n;
                }
                if !self.cons(i) {
                    break;
                }
                i += 1;
            }
            i += 1;
        }
    }

    fn vowel_in_stem(&self) -> bool {
        (0..=self.j).any(|i| !self.cons(i))
    }

    /// b[j-1..=j] is a double consonant.
    fn double_c(&self, j: i32) -> bool {
        j >= 1 && self.b[j as usize] == self.b[(j - 1) as usize] && self.cons(j)
    }

    /// b[i-2..=i] is consonant-vowel-consonant with the final consonant
    /// not w, x or y; used to restore a trailing e (e.g. hop-ing -> hope).
    fn cvc(&self, i: i32) -> bool {
        if i < 2 || !self.cons(i) || self.cons(i - 1) || !self.cons(i - 2) {
            return false;
        }
        !matches!(self.b[i as usize], b'w' | b'x' | b'y')
    }

    fn ends(&mut self, s: &[u8]) -> bool {
        let l = s.len() as i32;
        if l > self.k + 1 {
            return false;
        }
        if &self.b[(self.k - l + 1) as usize..=self.k as usize] != s {
            return false;
        }
        self.j = self.k - l;
        true
    }

    fn set_to(&mut self, s: &[u8]) {
        for (i, &c) in s.iter().enumerate() {
            self.b[(self.j + 1) as usize + i] = c;
        }
        self.k = self.j + s.len() as i32;
    }

    fn replace(&mut self, s: &[u8]) {
        if self.m() > 0 {
            self.set_to(s);
        }
    }

    /// Plurals and -ed/-ing: caresses -> caress, ponies -> poni,
    /// plastered -> plaster, motoring -> motor.
    fn step1ab(&mut self) {
        if self.b[self.k as usize] == b's' {
            if self.ends(b"sses") {
                self.k -= 2;
            } else if self.ends(b"ies") {
                self.set_to(b"i");
            } else if self.b[(self.k - 1) as usize] != b's' {
                self.k -= 1;
            }
        }
        if self.ends(b"eed") {
            if self.m() > 0 {
                self.k -= 1;
            }
        } else if (self.ends(b"ed") || self.ends(b"ing")) && self.vowel_in_stem() {
            self.k = self.j;
            if self.ends(b"at") {
                self.set_to(b"ate");
            } else if self.ends(b"bl") {
                self.set_to(b"ble");
            } else if self.ends(b"iz") {
                self.set_to(b"ize");
            } else if self.double_c(self.k) {
                self.k -= 1;
                if matches!(self.b[self.k as usize], b'l' | b's' | b'z') {
                    self.k += 1;
                }
            } else if self.m() == 1 && self.cvc(self.k) {
                self.set_to(b"e");
            }
        }
    }

    /// Turn a terminal y into i when there is another vowel in the stem.
    fn step1c(&mut self) {
        if self.ends(b"y") && self.vowel_in_stem() {
            self.b[self.k as usize] = b'i';
        }
    }

    /// Map double suffixes to single ones, e.g. -ization -> -ize.
    fn step2(&mut self) {
        if self.k == 0 {
            return;
        }
        match self.b[(self.k - 1) as usize] {
            b'a' => {
                if self.ends(b"ational") {
                    self.replace(b"ate");
                } else if self.ends(b"tional") {
                    self.replace(b"tion");
                }
            }
            b'c' => {
                if self.ends(b"enci") {
                    self.replace(b"ence");
                } else if self.ends(b"anci") {
                    self.replace(b"ance");
                }
            }
            b'e' => {
                if self.ends(b"izer") {
                    self.replace(b"ize");
                }
            }
            b'l' => {
                if self.ends(b"bli") {
                    self.replace(b"ble");
                } else if self.ends(b"alli") {
                    self.replace(b"al");
                } else if self.ends(b"entli") {
                    self.replace(b"ent");
                } else if self.ends(b"eli") {
                    self.replace(b"e");
                } else if self.ends(b"ousli") {
                    self.replace(b"ous");
                }
            }
            b'o' => {
                if self.ends(b"ization") {
                    self.replace(b"ize");
                } else if self.ends(b"ation") {
                    self.replace(b"ate");
                } else if self.ends(b"ator") {
                    self.replace(b"ate");
                }
            }
            b's' => {
                if self.ends(b"alism") {
                    self.replace(b"al");
                } else if self.ends(b"iveness") {
                    self.replace(b"ive");
                } else if self.ends(b"fulness") {
                    self.replace(b"ful");
                } else if self.ends(b"ousness") {
                    self.replace(b"ous");
                }
            }
            b't' => {
                if self.ends(b"aliti") {
                    self.replace(b"al");
                } else if self.ends(b"iviti") {
                    self.replace(b"ive");
                } else if self.ends(b"biliti") {
                    self.replace(b"ble");
                }
            }
            b'g' => {
                if self.ends(b"logi") {
                    self.replace(b"log");
                }
            }
            _ => {}
        }
    }

    /// -ic-, -full, -ness etc.
    fn step3(&mut self) {
        match self.b[self.k as usize] {
            b'e' => {
                if self.ends(b"icate") {
                    self.replace(b"ic");
                } else if self.ends(b"ative") {
                    self.replace(b"");
                } else if self.ends(b"alize") {
                    self.replace(b"al");
                }
            }
            b'i' => {
                if self.ends(b"iciti") {
                    self.replace(b"ic");
                }
            }
            b'l' => {
                if self.ends(b"ical") {
                    self.replace(b"ic");
                } else if self.ends(b"ful") {
                    self.replace(b"");
                }
            }
            b's' => {
                if self.ends(b"ness") {
                    self.replace(b"");
                }
            }
            _ => {}
        }
    }

    /// Drop -ant, -ence etc. when the measure says the stem is long enough.
    fn step4(&mut self) {
        if self.k == 0 {
            return;
        }
        let matched = match self.b[(self.k - 1) as usize] {
            b'a' => self.ends(b"al"),
            b'c' => self.ends(b"ance") || self.ends(b"ence"),
            b'e' => self.ends(b"er"),
            b'i' => self.ends(b"ic"),
            b'l' => self.ends(b"able") || self.ends(b"ible"),
            b'n' => {
                self.ends(b"ant")
                    || self.ends(b"ement")
                    || self.ends(b"ment")
                    || self.ends(b"ent")
            }
            b'o' => {
                (self.ends(b"ion")
                    && self.j >= 0
                    && matches!(self.b[self.j as usize], b's' | b't'))
                    || self.ends(b"ou")
            }
            b's' => self.ends(b"ism"),
            b't' => self.ends(b"ate") || self.ends(b"iti"),
            b'u' => self.ends(b"ous"),
            b'v' => self.ends(b"ive"),
            b'z' => self.ends(b"ize"),
            _ => false,
        };
        if matched && self.m() > 1 {
            self.k = self.j;
        }
    }

    /// Remove a final -e and reduce -ll in long stems.
    fn step5(&mut self) {
        self.j = self.k;
        if self.b[self.k as usize] == b'e' {
            let a = self.m();
            if a > 1 || (a == 1 && !self.cvc(self.k - 1)) {
                self.k -= 1;
            }
        }
        if self.b[self.k as usize] == b'l' && self.double_c(self.k) && self.m() > 1 {
            self.k -= 1;
        }
    }
}

/// Stem a single lowercase word.
pub fn stem(word: &str) -> String {
    if word.len() <= 2 || !word.bytes().all(|c| c.is_ascii_lowercase()) {
        return word.to_owned();
    }
    let mut s = Stemmer {
        b: word.as_bytes().to_vec(),
        k: word.len() as i32 - 1,
        j: 0,
    };
    s.step1ab();
    s.step1c();
    s.step2();
    s.step3();
    s.step4();
    s.step5();
    s.b.truncate(s.k as usize + 1);
    // The buffer only ever holds ASCII.
    String::from_utf8(s.b).expect("stemmer buffer is ASCII")
}

#[cfg(test)]
mod tests {
    use super::stem;

    #[test]
    fn short_words_unchanged() {
        assert_eq!(stem("a"), "a");
        assert_eq!(stem("is"), "is");
        assert_eq!(stem(""), "");
    }

    #[test]
    fn non_lowercase_ascii_unchanged() {
        assert_eq!(stem("1990"), "1990");
        assert_eq!(stem("mp3"), "mp3");
        assert_eq!(stem("naïve"), "naïve");
    }

    #[test]
    fn plural_rules() {
        assert_eq!(stem("caresses"), "caress");
        assert_eq!(stem("ponies"), "poni");
        assert_eq!(stem("ties"), "ti");
        assert_eq!(stem("caress"), "caress");
        assert_eq!(stem("cats"), "cat");
    }

    #[test]
    fn ed_ing_rules() {
        assert_eq!(stem("feed"), "feed");
        assert_eq!(stem("agreed"), "agre");
        assert_eq!(stem("plastered"), "plaster");
        assert_eq!(stem("bled"), "bled");
        assert_eq!(stem("motoring"), "motor");
        assert_eq!(stem("sing"), "sing");
        assert_eq!(stem("hopping"), "hop");
        assert_eq!(stem("tanned"), "tan");
        assert_eq!(stem("falling"), "fall");
        assert_eq!(stem("hissing"), "hiss");
        assert_eq!(stem("fizzed"), "fizz");
        assert_eq!(stem("failing"), "fail");
        assert_eq!(stem("filing"), "file");
    }

    #[test]
    fn y_to_i() {
        assert_eq!(stem("happy"), "happi");
        assert_eq!(stem("sky"), "sky");
    }

    #[test]
    fn paper_discussion_terms() {
        assert_eq!(stem("monogamy"), "monogami");
        assert_eq!(stem("polygamy"), "polygami");
        assert_eq!(stem("polyandry"), "polyandri");
        assert_eq!(stem("polygyny"), "polygyni");
        assert_eq!(stem("widow"), "widow");
        assert_eq!(stem("polygamist"), "polygamist");
        assert_eq!(stem("immigrant"), "immigr");
        assert_eq!(stem("arthritis"), "arthriti");
        assert_eq!(stem("disease"), "diseas");
    }
}
