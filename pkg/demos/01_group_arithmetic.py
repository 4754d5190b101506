"""
Arithmetic in Z_4^n and three-term progressions
================================================

Elements of Z_4^n are packed two bits per coordinate into one Python int.
This walk-through builds a few sets, looks for progressions a + b = 2c and
splits sets along the cosets of the involution subgroup F_n.
"""

from z4ap.group import (
    GroupVector,
    PointSet,
    coset,
    coset_decompose,
    double,
    find_progression,
    is_progression_free,
    tensor_power,
    two_dot,
    two_star,
)

# vectors are built from digit lists; + and - work coordinatewise mod 4
a = GroupVector.from_digits([1, 3])
b = GroupVector.from_digits([3, 2])
print("a + b =", a + b, "  2a =", double(a), "  -a =", -a)

# {0, 1, 3} in Z_4 holds the progression 1 + 3 = 2*0
A = PointSet.from_digit_strings(["0", "1", "3"], n=1)
print("progression in", A, ":", [str(v) for v in find_progression(A)])

# {0, 2} has none: 0 + 2 = 2c has no solution c distinct from both
print("{0, 2} progression-free:", is_progression_free(PointSet.from_digit_strings(["0", "2"], n=1)))

# the six-element maximum in Z_4^2
best = PointSet.from_digit_strings(["00", "01", "10", "12", "21", "22"], n=2)
print("six-point set is progression-free:", is_progression_free(best))

# coset decomposition: elements are grouped by their reduction mod 2
for r, part in coset_decompose(best).items():
    print("  coset of", r, "->", [str(v) for v in part.vectors()])

# 2.S collects sums of distinct pairs, 2*S the doubles; for a whole coset
# the doubles collapse to one point
R = coset(GroupVector.from_digits([1, 0]))
print("2*R for R = 10 + F_2:", [str(v) for v in two_star(R).vectors()])
print("|2.best| =", len(two_dot(best)))

# Cartesian powers keep progression-freeness and multiply sizes
sq = tensor_power(best, 2)
print("tensor square:", len(sq), "points in Z_4^4, progression-free:", is_progression_free(sq))
