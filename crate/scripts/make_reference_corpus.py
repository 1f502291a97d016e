#!/usr/bin/env python3
"""Writes the synthetic reference corpus used to train the bundled test model.

Ten themes with disjoint vocabularies. Each line is one document: mostly words
of one theme, some words of a second theme, and function words.

    python3 scripts/make_reference_corpus.py > crates/core/tests/fixtures/reference/reference.txt
"""

import random

THEMES = {
    "devices": "phone phones smartphone smartphones device devices battery batteries screen "
    "tablet tablets watch camera app apps software chip chips handset handsets stores gadget "
    "display users sensor",
    "law": "court courts judge judges lawsuit lawsuits regulator regulators investigation "
    "investigations ruling appeal appeals lawyer lawyers antitrust trial prosecutor prosecutors "
    "patent patents claims verdict jury settlement",
    "finance": "shares investors stock stocks profit profits revenue earnings dividend market "
    "markets quarter forecast forecasts analysts bank lender loans results margin bonds "
    "valuation sales outlook",
    "aviation": "aircraft jet jets airline airlines engine engines wing pilot pilots runway "
    "airport flight flights cabin passengers fuselage cockpit crew landing takeoff hangar "
    "altitude airspace",
    "energy": "oil gas pipeline pipelines barrel barrels refinery crude drilling well wells "
    "reserves opec petroleum fuel rig rigs offshore shale output supply tanker tankers energy",
    "sport": "match matches goal goals league season coach players player team teams striker "
    "stadium fans championship referee penalty tournament cup victory defeat squad transfer",
    "weather": "storm storms rain snow wind winds flood floods temperature forecasters hurricane "
    "drought heat cold weather clouds thunder lightning tornado sunshine frost humidity",
    "health": "hospital hospitals patients doctor doctors vaccine vaccines virus disease "
    "treatment drug drugs clinic nurses infection symptoms surgery cancer therapy pharmacy "
    "outbreak medicine",
    "politics": "election elections vote votes voters parliament minister ministers party "
    "parties campaign candidate candidates senate coalition ballot president policy reform "
    "government opposition",
    "food": "restaurant restaurants chef chefs menu dish dishes recipe recipes kitchen bakery "
    "bread cheese wine coffee dinner lunch flavor spices harvest grocery",
}

FUNCTION = "the a of to in and on for with by at from that this its their was were has".split()


def main():
    rng = random.Random(2015)
    names = sorted(THEMES)
    words = {n: THEMES[n].split() for n in names}
    lines = []
    for name in names:
        vocab = words[name]
        # Zipf-like weights so each theme has a clear head
        weights = [1.0 / (i + 1) ** 0.6 for i in range(len(vocab))]
        for _ in range(40):
            other = rng.choice([n for n in names if n != name])
            doc = []
            for _ in range(36):
                r = rng.random()
                if r < 0.30:
                    doc.append(rng.choice(FUNCTION))
                elif r < 0.88:
                    doc.append(rng.choices(vocab, weights)[0])
                else:
                    doc.append(rng.choice(words[other]))
            lines.append(" ".join(doc))
    rng.shuffle(lines)
    print("\n".join(lines))


if __name__ == "__main__":
    main()
