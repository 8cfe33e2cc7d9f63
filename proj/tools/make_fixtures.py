#!/usr/bin/env python3
"""Writes the checked-in test fixtures under tests/fixtures/.

films/      three-document corpus around Sam Mendes, American Beauty and Thora Birch
synthetic/  twenty documents with ten single-answer questions

Usage: python3 tools/make_fixtures.py [out_dir]
"""
import json
import sys
from pathlib import Path


def find(tokens, phrase, nth=0):
    words = phrase.split()
    hits = [i for i in range(len(tokens) - len(words) + 1) if tokens[i:i + len(words)] == words]
    if len(hits) <= nth:
        raise ValueError(f"{phrase!r} not in {' '.join(tokens)!r}")
    return [hits[nth], hits[nth] + len(words)]


class Doc:
    def __init__(self, doc_id, title, url=None):
        self.rec = {"doc_id": doc_id, "title": title, "sentences": []}
        if url:
            self.rec["url"] = url
        self.chains = {}
        self.n_sent = 0
        self.n_mention = 0
        self.n_clause = 0

    def sentence(self, text, mentions=(), clauses=()):
        """mentions: (phrase, entity_id|None, ner, nth, chain|None)
        clauses: (subject, predicate, [objects], [adverbials]); each role is a
        phrase or (phrase, nth)."""
        tokens = text.split()
        sid = f"{self.rec['doc_id']}.s{self.n_sent}"
        self.n_sent += 1
        sent = {"sent_id": sid, "text": text, "tokens": tokens, "clauses": [], "mentions": []}

        def span(role):
            phrase, nth = role if isinstance(role, tuple) else (role, 0)
            return find(tokens, phrase, nth)

        for subj, pred, objs, advs in clauses:
            cid = f"{self.rec['doc_id']}.c{self.n_clause}"
            self.n_clause += 1
            c = {"clause_id": cid, "subject": span(subj), "predicate": span(pred)}
            if objs:
                c["objects"] = [span(o) for o in objs]
            if advs:
                c["adverbials"] = [span(a) for a in advs]
            sent["clauses"].append(c)
        for phrase, ent, ner, nth, chain in mentions:
            mid = f"{self.rec['doc_id']}.m{self.n_mention}"
            self.n_mention += 1
            m = {"mention_id": mid, "span": find(tokens, phrase, nth), "surface": phrase, "ner_type": ner}
            if ent:
                m["entity_id"] = ent
            sent["mentions"].append(m)
            if chain:
                self.chains.setdefault(chain, []).append(mid)
        self.rec["sentences"].append(sent)

    def record(self):
        rec = dict(self.rec)
        chains = [ids for ids in self.chains.values() if len(ids) > 1]
        if chains:
            rec["coref_chains"] = chains
        return rec


def M(phrase, ent=None, ner="NONE", nth=0, chain=None):
    return (phrase, ent, ner, nth, chain)


def write_jsonl(path, records):
    with open(path, "w") as f:
        for r in records:
            f.write(json.dumps(r, sort_keys=True) + "\n")


def write_dict(path, entries):
    with open(path, "w") as f:
        for surface, ids in entries:
            f.write(f"{surface}\t{','.join(ids)}\n")


def write_emb(path, dim, vectors):
    with open(path, "w") as f:
        f.write(f"{len(vectors)} {dim}\n")
        for word, vec in vectors:
            assert len(vec) == dim, word
            f.write(word + " " + " ".join(repr(float(x)) for x in vec) + "\n")


# ---------------------------------------------------------------------------
# films

def films(out):
    out.mkdir(parents=True, exist_ok=True)
    docs = []

    d = Doc("Thora_Birch", "Thora Birch", "https://en.wikipedia.org/wiki/Thora_Birch")
    d.sentence("Thora Birch is an American actress .",
               [M("Thora Birch", "Thora_Birch", "PER", chain="tb")],
               [("Thora Birch", "is", ["an American actress"], [])])
    d.sentence("She played in American Beauty as Jane Burnham .",
               [M("She", "Thora_Birch", "PER", chain="tb"), M("American Beauty", "American_Beauty", "MISC"),
                M("Jane Burnham", None, "PER")],
               [("She", "played in", ["American Beauty"], ["as Jane Burnham"])])
    d.sentence("In the film , Birch plays the daughter of Lester Burnham .",
               [M("Birch", "Thora_Birch", "PER", chain="tb"), M("Lester Burnham", None, "PER")],
               [("Birch", "plays", ["the daughter of Lester Burnham"], ["In the film"])])
    docs.append(d.record())

    d = Doc("Sam_Mendes", "Sam Mendes", "https://en.wikipedia.org/wiki/Sam_Mendes")
    d.sentence("Sam Mendes is a British stage director .",
               [M("Sam Mendes", "Sam_Mendes", "PER", chain="sm")],
               [("Sam Mendes", "is", ["a British stage director"], [])])
    d.sentence("Samuel Alexander Mendes was born in Reading , Berkshire .",
               [M("Samuel Alexander Mendes", "Sam_Mendes", "PER", chain="sm"),
                M("Reading", "Reading_Berkshire", "LOC"), M("Berkshire", "Berkshire", "LOC")],
               [("Samuel Alexander Mendes", "was born in", ["Reading , Berkshire"], [])])
    d.sentence("He made his feature film directing debut in 1999 .",
               [M("He", "Sam_Mendes", "PER", chain="sm")],
               [("He", "made his feature film directing debut", [], ["in 1999"])])
    d.sentence("His debut film starred Kevin Spacey , Annette Bening and Thora Birch .",
               [M("His", "Sam_Mendes", "PER", chain="sm"), M("Kevin Spacey", "Kevin_Spacey", "PER"),
                M("Annette Bening", "Annette_Bening", "PER"), M("Thora Birch", "Thora_Birch", "PER")],
               [("His debut film", "starred", ["Kevin Spacey", "Annette Bening", "Thora Birch"], [])])
    d.sentence("Mendes later directed Skyfall .",
               [M("Mendes", "Sam_Mendes", "PER", chain="sm"), M("Skyfall", "Skyfall", "MISC")],
               [("Mendes", "directed", ["Skyfall"], ["later"])])
    d.sentence("American Beauty won the Academy Award for Best Picture .",
               [M("American Beauty", "American_Beauty", "MISC"),
                M("Academy Award for Best Picture", "Academy_Award_for_Best_Picture", "MISC")],
               [("American Beauty", "won", ["the Academy Award for Best Picture"], [])])
    docs.append(d.record())

    d = Doc("American_Beauty", "American Beauty", "https://en.wikipedia.org/wiki/American_Beauty_(1999_film)")
    d.sentence("American Beauty is a 1999 American black comedy drama film written by Alan Ball and directed by "
               "Sam Mendes .",
               [M("American Beauty", "American_Beauty", "MISC"), M("Alan Ball", "Alan_Ball", "PER"),
                M("Sam Mendes", "Sam_Mendes", "PER")],
               [("American Beauty", "is", ["a 1999 American black comedy drama film"], []),
                ("American Beauty", "written by", ["Alan Ball"], []),
                ("American Beauty", "directed by", ["Sam Mendes"], [])])
    d.sentence("The film stars Kevin Spacey as Lester Burnham , Annette Bening as Carolyn Burnham , and Thora Birch "
               "as Jane Burnham .",
               [M("Kevin Spacey", "Kevin_Spacey", "PER"), M("Lester Burnham", None, "PER"),
                M("Annette Bening", "Annette_Bening", "PER"), M("Carolyn Burnham", None, "PER"),
                M("Thora Birch", "Thora_Birch", "PER"), M("Jane Burnham", None, "PER")],
               [("The film", "stars", ["Kevin Spacey", "Annette Bening", "Thora Birch"],
                 ["as Lester Burnham", "as Carolyn Burnham", "as Jane Burnham"])])
    docs.append(d.record())
    write_jsonl(out / "annotations.jsonl", docs)

    write_dict(out / "dict.tsv", [
        ("Sam Mendes", ["Sam_Mendes"]),
        ("Samuel Alexander Mendes", ["Sam_Mendes"]),
        ("Mendes", ["Sam_Mendes"]),
        ("Thora Birch", ["Thora_Birch"]),
        ("Birch", ["Thora_Birch", "Birch_(tree)"]),
        ("Kevin Spacey", ["Kevin_Spacey"]),
        ("Spacey", ["Kevin_Spacey"]),
        ("Annette Bening", ["Annette_Bening"]),
        ("Bening", ["Annette_Bening"]),
        ("American Beauty", ["American_Beauty", "American_Beauty_(rose)"]),
        ("Alan Ball", ["Alan_Ball"]),
        ("Skyfall", ["Skyfall"]),
        ("Reading", ["Reading_Berkshire"]),
        ("Berkshire", ["Berkshire"]),
        ("Academy Award for Best Picture", ["Academy_Award_for_Best_Picture"]),
    ])

    # axes: acting, directing, debut, birth, writing, being, film, other
    write_emb(out / "emb.txt", 8, [
        ("starred", [1, 0, 0, 0, 0, 0, 0.1, 0]),
        ("stars", [0.95, 0, 0, 0, 0, 0, 0.15, 0]),
        ("played", [0.9, 0, 0, 0, 0, 0, 0, 0.2]),
        ("plays", [0.92, 0, 0, 0, 0, 0, 0.05, 0.15]),
        ("directing", [0, 1, 0.2, 0, 0, 0, 0.1, 0]),
        ("directed", [0, 1, 0, 0, 0, 0, 0.1, 0]),
        ("directorial", [0, 0.9, 0.1, 0, 0, 0, 0.1, 0]),
        ("directional", [0, 0.9, 0, 0, 0, 0, 0, 0.3]),
        ("debut", [0, 0.2, 1, 0, 0, 0, 0.1, 0]),
        ("made", [0, 0.1, 0.2, 0, 0, 0, 0, 0.6]),
        ("feature", [0, 0, 0, 0, 0, 0, 0.9, 0.3]),
        ("film", [0, 0, 0, 0, 0, 0, 1, 0]),
        ("born", [0, 0, 0, 1, 0, 0, 0, 0]),
        ("written", [0, 0, 0, 0, 1, 0, 0.1, 0]),
        ("is", [0, 0, 0, 0, 0, 1, 0, 0]),
        ("was", [0, 0, 0, 0, 0, 0.95, 0, 0.1]),
        ("won", [0, 0, 0, 0, 0, 0, 0, 1]),
    ])

    write_jsonl(out / "benchmark.jsonl", [
        {"question": "Which British stage director is best known for his feature-film directing debut, which starred "
                     "Kevin Spacey, Annette Bening, and Thora Birch?",
         "gold_aliases": ["Sam Mendes", "Samuel Alexander Mendes"], "gold_kb_id": "Sam_Mendes", "category": "People"},
        {"question": "Who directed American Beauty and Skyfall?",
         "gold_aliases": ["Sam Mendes"], "gold_kb_id": "Sam_Mendes", "category": "People"},
        {"question": "Which film starred Kevin Spacey and was written by Alan Ball?",
         "gold_aliases": ["American Beauty"], "gold_kb_id": "American_Beauty", "category": "Movie"},
    ])


# ---------------------------------------------------------------------------
# synthetic

PEOPLE = ["Orla Quennell", "Bram Tisdale", "Ines Varga", "Tomas Okafor", "Mira Holloway", "Dov Castellan",
          "Liesel Marchetti", "Rafe Ondine", "Sunniva Pardo", "Cato Wrenfield"]
FIRST_OBJ = ["Petra Lindqvist", "Anselm Roux", "Yara Bellweather", "Piet Calloway", "Nadia Ferreira",
             "Emrys Tolland", "Ottilie Brandt", "Kasimir Neve", "Greer Antolini", "Hollis Vantreight"]
SECOND_OBJ = ["Jory Maddox", "Elspeth Crane", "Fenwick Arledge", "Saoirse Delacroix", "Ivo Kestrel",
              "Marisol Quint", "Torben Ashdown", "Lucan Everly", "Wilhelmina Rook", "Zeno Haverford"]
DISTRACTORS = ["Agnes Pellow", "Barnaby Stroud", "Clio Ventura", "Dmitri Halden", "Esme Carrow",
               "Florian Tusk", "Gwendolyn Ibarra", "Hugo Lassiter", "Ilse Moreau", "Jasper Quill"]
VERBS_A = ["mentored", "painted", "interviewed", "coached", "photographed",
           "sponsored", "rescued", "tutored", "befriended", "defended"]
VERBS_B = ["hired", "sculpted", "married", "recruited", "sketched",
           "funded", "sheltered", "advised", "visited", "represented"]
VERBS_D = ["admired", "criticized", "ignored", "praised", "followed",
           "questioned", "welcomed", "thanked", "challenged", "greeted"]
CATEGORIES = ["People", "People", "Arts", "People", "Arts", "People", "People", "Arts", "People", "Arts"]


def kb(name):
    return name.replace(" ", "_")


def synthetic(out):
    out.mkdir(parents=True, exist_ok=True)
    docs, items = [], []
    for i, person in enumerate(PEOPLE):
        a, b = FIRST_OBJ[i], SECOND_OBJ[i]
        d = Doc(f"syn_answer_{i:02d}", person)
        for obj, verb in ((a, VERBS_A[i]), (b, VERBS_B[i])):
            d.sentence(f"{person} {verb} {obj} .",
                       [M(person, kb(person), "PER", chain="p"), M(obj, kb(obj), "PER")],
                       [(person, verb, [obj], [])])
        docs.append(d.record())
        items.append({"question": f"Who {VERBS_A[i]} {a} and {VERBS_B[i]} {b}?",
                      "gold_aliases": [person], "gold_kb_id": kb(person), "category": CATEGORIES[i]})
    for j, person in enumerate(DISTRACTORS):
        obj = FIRST_OBJ[(j + 3) % len(FIRST_OBJ)]
        d = Doc(f"syn_distractor_{j:02d}", person)
        d.sentence(f"{person} {VERBS_D[j]} {obj} .",
                   [M(person, kb(person), "PER"), M(obj, kb(obj), "PER")],
                   [(person, VERBS_D[j], [obj], [])])
        docs.append(d.record())
    write_jsonl(out / "annotations.jsonl", docs)
    write_jsonl(out / "benchmark.jsonl", items)

    names = PEOPLE + FIRST_OBJ + SECOND_OBJ + DISTRACTORS
    write_dict(out / "dict.tsv", [(n, [kb(n)]) for n in names])
    verbs = VERBS_A + VERBS_B + VERBS_D
    write_emb(out / "emb.txt", len(verbs),
              [(v, [1.0 if k == i else 0.0 for k in range(len(verbs))]) for i, v in enumerate(verbs)])


def main():
    root = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent / "tests" / "fixtures"
    films(root / "films")
    synthetic(root / "synthetic")


if __name__ == "__main__":
    main()
