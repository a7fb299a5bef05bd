//! Word list for descriptive identifiers and label text.

pub const WORDS: [&str; 160] = [
    "person", "river", "stream", "lake", "mountain", "valley", "forest", "tree", "leaf", "root",
    "flower", "seed", "fruit", "grain", "field", "farm", "animal", "bird", "fish", "insect",
    "cell", "tissue", "organ", "blood", "bone", "muscle", "nerve", "brain", "heart", "lung",
    "liver", "kidney", "skin", "gene", "protein", "enzyme", "virus", "disease", "symptom", "drug",
    "dose", "trial", "patient", "doctor", "nurse", "hospital", "clinic", "record", "sample", "assay",
    "device", "sensor", "signal", "image", "scan", "report", "study", "method", "result", "measure",
    "unit", "quantity", "length", "mass", "volume", "time", "period", "event", "process", "action",
    "agent", "group", "family", "child", "parent", "author", "editor", "reader", "book", "chapter",
    "page", "title", "word", "phrase", "sentence", "language", "dialect", "grammar", "meaning", "sense",
    "concept", "category", "topic", "subject", "object", "place", "city", "country", "region", "border",
    "road", "bridge", "building", "room", "door", "window", "roof", "wall", "floor", "garden",
    "market", "price", "money", "bank", "account", "payment", "contract", "service", "product", "order",
    "vehicle", "engine", "wheel", "train", "ship", "plane", "route", "journey", "ticket", "station",
    "music", "song", "dance", "painting", "museum", "artist", "style", "colour", "shape", "pattern",
    "school", "course", "lesson", "teacher", "student", "exam", "grade", "degree", "skill", "task",
    "rum", "raisin", "icecream", "bread", "cheese", "butter", "honey", "water", "salt", "sugar",
];
