"""The exact simplex on a small problem, with its dual certificate."""

from fractions import Fraction

from contextuality.lp import maximize
from contextuality.rational import dot

# max 3x + 2y  s.t.  x + y <= 4,  x + 3y <= 6,  x <= 3
c = [3, 2]
A = [[1, 1], [1, 3], [1, 0]]
b = [4, 6, 3]
sol = maximize(c, A, b)
print(sol.status.value, "value", sol.value)
print("x =", [str(v) for v in sol.x])
print("y =", [str(v) for v in sol.y])
print("b.y =", dot(b, sol.y), " pivots:", sol.pivots)
assert dot(b, sol.y) == sol.value == Fraction(11)
