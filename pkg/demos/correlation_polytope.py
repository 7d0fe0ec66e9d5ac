"""Pitowsky-style membership test with an explicit separating hyperplane."""

from fractions import Fraction

from contextuality import CorrelationPolytopeSpec, correlation_membership, parse

spec = CorrelationPolytopeSpec(["a", "a'", "b", "b'"],
                               [parse("a <-> b"), parse("a <-> b'"), parse("a' <-> b"), parse("a' (+) b'")])
v = [Fraction(1, 2)] * 4 + [Fraction(1), Fraction(3, 4), Fraction(3, 4), Fraction(3, 4)]

res = correlation_membership(spec, v)
print("member:", res.member)
print("h  =", " ".join(str(h) for h in res.normal))
print("h0 =", res.offset)
print("h.v =", sum(h * x for h, x in zip(res.normal, v)))
print("certificate checks out:", res.verify(v))
