"""Independent Porter stemmer (canonical variant, with the published
bli->ble and logi->log departures). Used during development to cross-check
the Rust implementation on random inputs; not part of the build."""


def stem(word: str) -> str:
    if len(word) <= 2 or not all("a" <= c <= "z" for c in word):
        return word
    b = list(word)
    k = len(b) - 1
    j = 0

    def cons(i):
        c = b[i]
        if c in "aeiou":
            return False
        if c == "y":
            return True if i == 0 else not cons(i - 1)
        return True

    def m():
        n = 0
        i = 0
        while True:
            if i > j:
                return n
            if not cons(i):
                break
            i += 1
        i += 1
        while True:
            while True:
                if i > j:
                    return n
                if cons(i):
                    break
                i += 1
            i += 1
            n += 1
            while True:
                if i > j:
                    return n
                if not cons(i):
                    break
                i += 1
            i += 1

    def vowelinstem():
        return any(not cons(i) for i in range(j + 1))

    def doublec(jj):
        return jj >= 1 and b[jj] == b[jj - 1] and cons(jj)

    def cvc(i):
        if i < 2 or not cons(i) or cons(i - 1) or not cons(i - 2):
            return False
        return b[i] not in "wxy"

    def ends(s):
        nonlocal j
        l = len(s)
        if l > k + 1:
            return False
        if "".join(b[k - l + 1 : k + 1]) != s:
            return False
        j = k - l
        return True

    def setto(s):
        nonlocal k
        for i, c in enumerate(s):
            b[j + 1 + i] = c
        k = j + len(s)

    def r(s):
        if m() > 0:
            setto(s)

    # step 1ab
    if b[k] == "s":
        if ends("sses"):
            k -= 2
        elif ends("ies"):
            setto("i")
        elif b[k - 1] != "s":
            k -= 1
    if ends("eed"):
        if m() > 0:
            k -= 1
    elif (ends("ed") or ends("ing")) and vowelinstem():
        k = j
        if ends("at"):
            setto("ate")
        elif ends("bl"):
            setto("ble")
        elif ends("iz"):
            setto("ize")
        elif doublec(k):
            k -= 1
            if b[k] in "lsz":
                k += 1
        elif m() == 1 and cvc(k):
            setto("e")

    # step 1c
    if ends("y") and vowelinstem():
        b[k] = "i"

    # step 2
    if k > 0:
        ch = b[k - 1]
        if ch == "a":
            if ends("ational"):
                r("ate")
            elif ends("tional"):
                r("tion")
        elif ch == "c":
            if ends("enci"):
                r("ence")
            elif ends("anci"):
                r("ance")
        elif ch == "e":
            if ends("izer"):
                r("ize")
        elif ch == "l":
            if ends("bli"):
                r("ble")
            elif ends("alli"):
                r("al")
            elif ends("entli"):
                r("ent")
            elif ends("eli"):
                r("e")
            elif ends("ousli"):
                r("ous")
        elif ch == "o":
            if ends("ization"):
                r("ize")
            elif ends("ation"):
                r("ate")
            elif ends("ator"):
                r("ate")
        elif ch == "s":
            if ends("alism"):
                r("al")
            elif ends("iveness"):
                r("ive")
            elif ends("fulness"):
                r("ful")
            elif ends("ousness"):
                r("ous")
        elif ch == "t":
            if ends("aliti"):
                r("al")
            elif ends("iviti"):
                r("ive")
            elif ends("biliti"):
                r("ble")
        elif ch == "g":
            if ends("logi"):
                r("log")

    # step 3
    ch = b[k]
    if ch == "e":
        if ends("icate"):
            r("ic")
        elif ends("ative"):
            r("")
        elif ends("alize"):
            r("al")
    elif ch == "i":
        if ends("iciti"):
            r("ic")
    elif ch == "l":
        if ends("ical"):
            r("ic")
        elif ends("ful"):
            r("")
    elif ch == "s":
        if ends("ness"):
            r("")

    # step 4
    if k > 0:
        ch = b[k - 1]
        matched = False
        if ch == "a":
            matched = ends("al")
        elif ch == "c":
            matched = ends("ance") or ends("ence")
        elif ch == "e":
            matched = ends("er")
        elif ch == "i":
            matched = ends("ic")
        elif ch == "l":
            matched = ends("able") or ends("ible")
        elif ch == "n":
            matched = ends("ant") or ends("ement") or ends("ment") or ends("ent")
        elif ch == "o":
            matched = (ends("ion") and j >= 0 and b[j] in "st") or ends("ou")
        elif ch == "s":
            matched = ends("ism")
        elif ch == "t":
            matched = ends("ate") or ends("iti")
        elif ch == "u":
            matched = ends("ous")
        elif ch == "v":
            matched = ends("ive")
        elif ch == "z":
            matched = ends("ize")
        if matched and m() > 1:
            k = j

    # step 5
    j = k
    if b[k] == "e":
        a = m()
        if a > 1 or (a == 1 and not cvc(k - 1)):
            k -= 1
    if b[k] == "l" and doublec(k) and m() > 1:
        k -= 1

    return "".join(b[: k + 1])


if __name__ == "__main__":
    import sys

    for line in sys.stdin:
        w = line.strip()
        if w:
            print(stem(w))
