"""A first pass over the declaration language: parse, check, get rejected.

Run as `python3 demos/checking_tour.py`.  Everything here is inline
source text, so the demo doubles as a minimal worked example of the
grammar in docs/grammar.md.
"""

from seqprof.parser import parse
from seqprof.typecheck import check_file

GOOD = """
-- a pair consumed from the left, then the right
term swap [x:+A, y:+B] : +B /\\ A = (y, x)

term select [x:+A] : +A \\/ A = inl x

-- abstraction on both sides of a cut, with the cut type spelled out
term roundabout [x:+A, b:-A] : # = <mu a. <x | a : A> | mu~ z. <z | b : A> : A>

-- a reduction witness: fire the mu~ and land on the inner cut.
-- the producer is itself an abstraction, so the cut type is annotated
red fire [x:+A, b:-A] : # = beta_mu~(mu a. <x | a : A>; z. <z | b : A> : A)
"""

BAD = """
term wrong_type [x:+A] : +B = x
term loose_end  [x:+A] : # = <x | a : A>
"""


def main():
    sf = parse(GOOD)
    print("checking", len(sf.decls), "declarations:")
    for rec in check_file(sf):
        line = f"  {rec.name:<12} ok"
        if rec.kind == "reduction":
            line += f"   {rec.to_dict()['source']}  =>  {rec.to_dict()['target']}"
        assert rec.ok
        print(line)

    print()
    print("declarations the checker rejects, with their error classes:")
    for rec in check_file(parse(BAD)):
        print(f"  {rec.name:<12} [{rec.error_class}] {rec.message}")


if __name__ == "__main__":
    main()
