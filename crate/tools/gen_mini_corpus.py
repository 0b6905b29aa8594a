"""Deterministic generator for the bundled mini collection in data/mini/:
a 500-document TREC-format corpus, 20 title topics, graded qrels, and a
TSV gloss lexicon with per-theme shared definition vocabulary.

Run from the repository root: python3 tools/gen_mini_corpus.py
"""

import random

random.seed(20240807)

STOPWORDS = "the of and in to a is was for on with as by at from".split()

FILLER = (
    "report study group people year system market committee region water "
    "member program money travel record company public local history image "
    "road street room door table paper letter mountain river city town house "
    "music film sport game match team player coach score news media press "
    "council school student teacher lesson course library court judge case "
    "police officer witness driver road bridge station train airport flight "
    "hotel guest visitor winter summer spring autumn morning evening night "
    "industry worker union office manager project budget finance tax trade "
    "price goods service customer seller buyer farm field village harvest "
    "festival crowd parade artist gallery museum statue garden park tree"
).split()

# theme = (topic id, title, [(lemma, gloss builder kind)], concepts, extra words)
# Each theme defines a small shared "concept vocabulary"; every glossed
# lemma of the theme mentions two or more concept words, which is what
# gives the gloss-overlap methods their signal.
THEMES = [
    {
        "id": 601,
        "title": "Lyme Disease Arthritis",
        "phrase": "lyme_disease",
        "query_lemmas": ["lyme_disease", "arthritis"],
        "concepts": ["inflammation", "joint", "tick", "infection"],
        "words": [
            "spondylitis", "rheumatism", "borreliosis", "rash", "swelling",
            "antibiotic", "fever", "stiffness", "bacteria", "erythema",
        ],
    },
    {
        "id": 602,
        "title": "Solar Energy Storage",
        "phrase": "solar_energy",
        "query_lemmas": ["solar_energy", "storage"],
        "concepts": ["sunlight", "battery", "electricity", "grid"],
        "words": [
            "photovoltaic", "panel", "inverter", "lithium", "capacity",
            "cell", "module", "voltage", "charge", "generation",
        ],
    },
    {
        "id": 603,
        "title": "Volcanic Eruption Prediction",
        "phrase": None,
        "query_lemmas": ["volcanic", "eruption", "prediction"],
        "concepts": ["magma", "seismic", "ash", "vent"],
        "words": [
            "volcano", "lava", "tremor", "crater", "seismometer",
            "plume", "monitoring", "forecast", "gas", "dome",
        ],
    },
    {
        "id": 604,
        "title": "Coral Reef Bleaching",
        "phrase": "coral_reef",
        "query_lemmas": ["coral_reef", "bleaching"],
        "concepts": ["ocean", "temperature", "algae", "colony"],
        "words": [
            "polyp", "symbiosis", "warming", "acidification", "lagoon",
            "atoll", "biodiversity", "mortality", "recovery", "pigment",
        ],
    },
    {
        "id": 605,
        "title": "Wheat Crop Disease",
        "phrase": None,
        "query_lemmas": ["wheat", "crop", "disease"],
        "concepts": ["fungus", "grain", "leaf", "yield"],
        "words": [
            "rust", "blight", "fungicide", "mildew", "spore",
            "stem", "pathogen", "resistance", "cultivar", "smut",
        ],
    },
    {
        "id": 606,
        "title": "Electric Vehicle Charging",
        "phrase": "electric_vehicle",
        "query_lemmas": ["electric_vehicle", "charging"],
        "concepts": ["battery", "plug", "motor", "current"],
        "words": [
            "charger", "socket", "range", "kilowatt", "adapter",
            "outlet", "cable", "station", "hybrid", "tariff",
        ],
    },
    {
        "id": 607,
        "title": "Ancient Roman Architecture",
        "phrase": None,
        "query_lemmas": ["ancient", "roman", "architecture"],
        "concepts": ["column", "arch", "stone", "temple"],
        "words": [
            "aqueduct", "concrete", "forum", "basilica", "vault",
            "amphitheater", "pillar", "fresco", "mosaic", "ruin",
        ],
    },
    {
        "id": 608,
        "title": "Deep Sea Mining",
        "phrase": "deep_sea",
        "query_lemmas": ["deep_sea", "mining"],
        "concepts": ["seabed", "mineral", "nodule", "depth"],
        "words": [
            "trench", "dredge", "manganese", "cobalt", "sediment",
            "vessel", "extraction", "abyss", "survey", "deposit",
        ],
    },
    {
        "id": 609,
        "title": "Influenza Vaccine Development",
        "phrase": None,
        "query_lemmas": ["influenza", "vaccine", "development"],
        "concepts": ["antibody", "immunity", "strain", "virus"],
        "words": [
            "inoculation", "trial", "dose", "antigen", "mutation",
            "outbreak", "epidemic", "serum", "booster", "pandemic",
        ],
    },
    {
        "id": 610,
        "title": "Wind Turbine Noise",
        "phrase": "wind_turbine",
        "query_lemmas": ["wind_turbine", "noise"],
        "concepts": ["blade", "rotor", "sound", "hum"],
        "words": [
            "decibel", "acoustic", "nacelle", "gearbox", "vibration",
            "frequency", "annoyance", "setback", "swish", "tower",
        ],
    },
    {
        "id": 611,
        "title": "Honey Bee Decline",
        "phrase": "honey_bee",
        "query_lemmas": ["honey_bee", "decline"],
        "concepts": ["hive", "pollinator", "colony", "nectar"],
        "words": [
            "pesticide", "varroa", "forager", "queen", "brood",
            "apiary", "swarm", "pollen", "beekeeper", "collapse",
        ],
    },
    {
        "id": 612,
        "title": "Glacier Melting Alps",
        "phrase": None,
        "query_lemmas": ["glacier", "melting", "alps"],
        "concepts": ["ice", "snow", "retreat", "meltwater"],
        "words": [
            "moraine", "crevasse", "snowline", "permafrost", "runoff",
            "altitude", "valley", "summit", "thaw", "firn",
        ],
    },
    {
        "id": 613,
        "title": "Urban Traffic Congestion",
        "phrase": None,
        "query_lemmas": ["urban", "traffic", "congestion"],
        "concepts": ["commuter", "road", "vehicle", "delay"],
        "words": [
            "gridlock", "toll", "transit", "rush", "junction",
            "parking", "bus", "detour", "bottleneck", "signal",
        ],
    },
    {
        "id": 614,
        "title": "Renewable Diesel Fuel",
        "phrase": None,
        "query_lemmas": ["renewable", "diesel", "fuel"],
        "concepts": ["biofuel", "refinery", "emission", "feedstock"],
        "words": [
            "blend", "tallow", "canola", "hydrotreating", "cetane",
            "soybean", "engine", "combustion", "mandate", "subsidy",
        ],
    },
    {
        "id": 615,
        "title": "Quantum Computer Error",
        "phrase": "quantum_computer",
        "query_lemmas": ["quantum_computer", "error"],
        "concepts": ["qubit", "decoherence", "gate", "correction"],
        "words": [
            "superposition", "entanglement", "fidelity", "circuit", "readout",
            "syndrome", "stabilizer", "cryostat", "processor", "fault",
        ],
    },
    {
        "id": 616,
        "title": "Polygamy Polyandry Polygyny",
        "phrase": None,
        "query_lemmas": ["polygamy", "polyandry", "polygyny"],
        "concepts": ["marriage", "spouse", "wife", "husband"],
        "words": [
            "widow", "monogamy", "polygamist", "bigamy", "custom",
            "kinship", "dowry", "clan", "household", "wedlock",
        ],
    },
    {
        "id": 617,
        "title": "Clothing Sweatshop Labor",
        "phrase": None,
        "query_lemmas": ["clothing", "sweatshop", "labor"],
        "concepts": ["garment", "factory", "wage", "worker"],
        "words": [
            "immigrant", "shop", "textile", "seamstress", "overtime",
            "inspection", "contractor", "apparel", "union", "exploitation",
        ],
    },
    {
        "id": 618,
        "title": "Asteroid Impact Risk",
        "phrase": None,
        "query_lemmas": ["asteroid", "impact", "risk"],
        "concepts": ["orbit", "collision", "crater", "deflection"],
        "words": [
            "meteor", "telescope", "trajectory", "comet", "fragment",
            "surveillance", "hazard", "kilometer", "detection", "flyby",
        ],
    },
    {
        "id": 619,
        "title": "Antibiotic Resistance Bacteria",
        "phrase": None,
        "query_lemmas": ["antibiotic", "resistance", "bacteria"],
        "concepts": ["pathogen", "mutation", "drug", "microbe"],
        "words": [
            "superbug", "penicillin", "plasmid", "hospital", "dosage",
            "stewardship", "culture", "gene", "membrane", "colonization",
        ],
    },
    {
        "id": 620,
        "title": "Olive Oil Adulteration",
        "phrase": "olive_oil",
        "query_lemmas": ["olive_oil", "adulteration"],
        "concepts": ["fraud", "purity", "press", "orchard"],
        "words": [
            "labeling", "blending", "acidity", "tasting", "grove",
            "importer", "certificate", "seizure", "chemist", "bottling",
        ],
    },
]

GLOSS_OPENERS = [
    "a condition involving",
    "a process concerning",
    "a source associated with",
    "a practice connected with",
    "a phenomenon related to",
    "something characterized by",
    "an occurrence involving",
    "a matter concerning",
]

GLOSS_TAILS = [
    "observed in many regions",
    "studied for many years",
    "documented in detail",
    "known since antiquity",
    "described by specialists",
    "recorded in surveys",
]


def make_gloss(concepts, k):
    """A gloss mentioning at least two of the theme's concept words."""
    c = random.sample(concepts, min(len(concepts), 2 + k % 2))
    opener = GLOSS_OPENERS[k % len(GLOSS_OPENERS)]
    tail = GLOSS_TAILS[k % len(GLOSS_TAILS)]
    return f"{opener} {' and '.join(c)}; {tail}"


def title_words(theme):
    return [w.lower() for w in theme["title"].split()]


def doc_tokens_relevant(theme):
    n = random.randint(50, 110)
    tokens = []
    # query terms: make the document strongly retrievable
    for w in title_words(theme):
        for _ in range(random.randint(1, 3)):
            tokens.append(w)
    # theme vocabulary carries the expansion signal
    pool = theme["words"] + theme["concepts"]
    while len(tokens) < int(n * 0.6):
        tokens.append(random.choice(pool))
    while len(tokens) < n:
        r = random.random()
        if r < 0.35:
            tokens.append(random.choice(STOPWORDS))
        else:
            tokens.append(random.choice(FILLER))
    random.shuffle(tokens)
    return tokens


def doc_tokens_background():
    n = random.randint(40, 100)
    tokens = []
    while len(tokens) < n:
        r = random.random()
        if r < 0.3:
            tokens.append(random.choice(STOPWORDS))
        else:
            tokens.append(random.choice(FILLER))
    # light contamination: a couple of words from one random theme
    theme = random.choice(THEMES)
    for _ in range(random.randint(0, 3)):
        tokens.append(random.choice(theme["words"] + title_words(theme)))
    random.shuffle(tokens)
    return tokens


def wrap(tokens, width=13):
    lines = []
    for i in range(0, len(tokens), width):
        lines.append(" ".join(tokens[i : i + width]))
    return "\n".join(lines)


def main():
    docs = []  # (theme_id or None, tokens)
    for theme in THEMES:
        for _ in range(14):
            docs.append((theme["id"], doc_tokens_relevant(theme)))
    while len(docs) < 500:
        docs.append((None, doc_tokens_background()))
    random.shuffle(docs)

    corpus_lines = []
    assignments = {}  # topic id -> [docno]
    all_docnos = []
    for i, (theme_id, tokens) in enumerate(docs, start=1):
        docno = f"MINI-{i:04d}"
        all_docnos.append(docno)
        if theme_id is not None:
            assignments.setdefault(theme_id, []).append(docno)
        corpus_lines.append("<DOC>")
        corpus_lines.append(f"<DOCNO> {docno} </DOCNO>")
        corpus_lines.append("<TEXT>")
        corpus_lines.append(wrap(tokens))
        corpus_lines.append("</TEXT>")
        corpus_lines.append("</DOC>")
    with open("data/mini/corpus.trec", "w") as f:
        f.write("\n".join(corpus_lines) + "\n")

    with open("data/mini/topics.txt", "w") as f:
        for theme in THEMES:
            f.write("<top>\n")
            f.write(f"<num> Number: {theme['id']}\n")
            f.write(f"<title> {theme['title']}\n\n")
            f.write("<desc> Description:\n")
            f.write(f"Documents about {theme['title'].lower()}.\n")
            f.write("</top>\n")

    qrel_lines = []
    for theme in THEMES:
        relevant = assignments[theme["id"]]
        for docno in sorted(relevant):
            grade = 2 if random.random() < 0.2 else 1
            qrel_lines.append(f"{theme['id']} 0 {docno} {grade}")
        judged_non_relevant = random.sample(
            [d for d in all_docnos if d not in relevant], 15
        )
        for docno in sorted(judged_non_relevant):
            qrel_lines.append(f"{theme['id']} 0 {docno} 0")
    with open("data/mini/qrels.txt", "w") as f:
        f.write("\n".join(qrel_lines) + "\n")

    gloss_lines = [
        "# Mini gloss lexicon: lemma<TAB>gloss, one synset per line.",
    ]
    k = 0
    for theme in THEMES:
        lemmas = list(theme["query_lemmas"])
        for w in theme["words"]:
            lemmas.append(w)
        # concept words themselves get glosses too (second synsets for slight noise)
        for w in theme["concepts"][:2]:
            lemmas.append(w)
        for lemma in lemmas:
            gloss_lines.append(f"{lemma}\t{make_gloss(theme['concepts'], k)}")
            k += 1
            # a second synset for a few lemmas
            if k % 7 == 0:
                gloss_lines.append(f"{lemma}\t{make_gloss(theme['concepts'], k + 3)}")
    with open("data/mini/glosses.tsv", "w") as f:
        f.write("\n".join(gloss_lines) + "\n")

    n_rel = sum(len(v) for v in assignments.values())
    print(f"docs: {len(docs)}, topics: {len(THEMES)}, relevant: {n_rel}")
    print(f"gloss entries: {len(gloss_lines) - 1}")


if __name__ == "__main__":
    main()
