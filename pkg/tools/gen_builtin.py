"""Regenerate src/hopfgalois/data/builtin.hg from the Python builders and the cocycle solver."""

from pathlib import Path

from hopfgalois.crossed import coboundary_cocycle, solve_unital_cocycles
from hopfgalois.cotwist import HopfTwist, twist_hopf
from hopfgalois.comod import trivial_action
from hopfgalois.fixtures import dump_bilinear, dump_hopf
from hopfgalois.hopf import (
    build_dual_group_algebra,
    build_group_algebra,
    build_sweedler,
    cyclic_group,
    field_algebra,
    product_group,
    symmetric_group,
)
from hopfgalois.linalg import LinMap
from hopfgalois.scalars import Scalar, zeta

OUT = Path(__file__).resolve().parents[1] / "src" / "hopfgalois" / "data" / "builtin.hg"
K = field_algebra()

kZ2 = build_group_algebra(*cyclic_group(2))
kV4 = build_group_algebra(*product_group(cyclic_group(2, "a"), cyclic_group(2, "b")))
kZ3 = build_group_algebra(*cyclic_group(3))
kS3 = build_group_algebra(*symmetric_group(3))
dS3 = build_dual_group_algebra(*symmetric_group(3))
H4 = build_sweedler()


def first_product_changing(M, skip=0):
    found = []
    for s in solve_unital_cocycles(M, conductor=4, max_solutions=64):
        t = HopfTwist(M.hopf, s.sigma.with_spaces(s.sigma.domain, K.space))
        if twist_hopf(t).alg.table != M.hopf.alg.table:
            found.append(s.sigma)
    return found[skip]


parts = ["# Built-in fixtures. Regenerate with tools/gen_builtin.py.\n"]
for name, H in [("kZ2", kZ2), ("kZ2xZ2", kV4), ("kZ3", kZ3), ("kS3", kS3), ("dual-kS3", dS3), ("sweedler", H4)]:
    parts.append(dump_hopf(H, name))

parts.append("""algebra kZ2u
basis 1 u
unit 1
mult(u,u) = 1
""")

parts.append("""measuring Q-triv-kZ2 hopf=kZ2 algebra=field
measuring kZ2u-sign-kZ2 hopf=kZ2 algebra=kZ2u
action(g,u) = -u
measuring kZ2u-triv-kZ2 hopf=kZ2 algebra=kZ2u
measuring kZ2u-sign-kV4 hopf=kZ2xZ2 algebra=kZ2u
action(a,u) = -u
action(ab,u) = -u
measuring Q-triv-kV4 hopf=kZ2xZ2 algebra=field
measuring Q-triv-H4 hopf=sweedler algebra=field
measuring kZ2u-triv-H4 hopf=sweedler algebra=kZ2u
measuring Q-triv-dual-kS3 hopf=dual-kS3 algebra=field
""")

parts.append("""cocycle kZ2-sigma-neg1 measuring=Q-triv-kZ2
sigma(g,g) = -1
hopf_twist kZ2-gamma-neg1 hopf=kZ2 for=kZ2-sigma-neg1
gamma(g,g) = -1
cocycle kZ2-sign-kZ2 measuring=kZ2u-sign-kZ2
cocycle kZ2-sign-kZ2-sigma-neg1 measuring=kZ2u-sign-kZ2
sigma(g,g) = -1
cocycle kZ2-triv-kZ2-sigma-u measuring=kZ2u-triv-kZ2
sigma(g,g) = u
cocycle kZ2-sign-kV4-sigma measuring=kZ2u-sign-kV4
sigma(a,b) = -u
sigma(a,ab) = u
sigma(b,a) = u
sigma(b,ab) = u
sigma(ab,a) = u
sigma(ab,b) = -u
""")

# σ(aⁱbʲ, aᵏbˡ) = ζ₄^(2jk+ik+jl)
exps = {"1": (0, 0), "b": (0, 1), "a": (1, 0), "ab": (1, 1)}
cols = []
for x in kV4.space.labels:
    for y in kV4.space.labels:
        (i, j), (k, l) = exps[x], exps[y]
        cols.append({0: zeta(4, (2 * j * k + i * k + j * l) % 4).minimal()})
bichar = LinMap(kV4.coproduct.codomain, K.space, cols)
parts.append("# ζ₄^(2jk+ik+jl) on a^i b^j, a^k b^l\n" + dump_bilinear("cocycle", "QZ4-bichar-kV4", "measuring=Q-triv-kV4", "sigma", bichar, kV4))
# conjugate bicharacter as a cotwist
conj = LinMap(bichar.domain, K.space, [{0: c[0] ** 3} for c in cols])
parts.append(dump_bilinear("hopf_twist", "kV4-gamma-bichar3", "hopf=kZ2xZ2 for=QZ4-bichar-kV4", "gamma", conj, kV4))

sig_h4 = first_product_changing(trivial_action(H4, K))
gam_h4 = first_product_changing(trivial_action(H4, K), skip=1)
parts.append("# solved cocycles on the Sweedler algebra whose twist changes the product\n" + dump_bilinear("cocycle", "H4-sigma", "measuring=Q-triv-H4", "sigma", sig_h4, H4))
parts.append(dump_bilinear("hopf_twist", "H4-gamma", "hopf=sweedler for=H4-sigma", "gamma", gam_h4, H4))
parts.append("""cocycle H4-triv-kZ2-sigma-u measuring=kZ2u-triv-H4
sigma(x,x) = u
sigma(x,gx) = -u
sigma(gx,x) = u
sigma(gx,gx) = -u
""")

# coboundary on k^{S3} from γ(δ_1) = γ(δ_213) = 1, γ(δ_132) = -1, so γ(1) = 1
gvals = {"δ1": Scalar.rational(1), "δ213": Scalar.rational(1), "δ132": Scalar.rational(-1)}
gcols = [{0: gvals[l]} if l in gvals else {} for l in dS3.space.labels]
gamma = LinMap(dS3.space, K.space, gcols)
cob = coboundary_cocycle(trivial_action(dS3, K), gamma)
parts.append("# coboundary of γ(δ_1) = γ(δ_213) = 1, γ(δ_132) = -1 on k^{S3}\n" + dump_bilinear("cocycle", "dual-kS3-coboundary", "measuring=Q-triv-dual-kS3", "sigma", cob.sigma, dS3))

OUT.write_text("\n".join(parts), encoding="utf-8")
print(f"wrote {OUT}")
