#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <vector>

#include "vwlab/fiber_algebra.hpp"
#include "vwlab/rng.hpp"

using namespace vwlab;

// Independent list-based model of the exterior algebra. Monomials are sorted
// axis lists; signs come from counting transpositions, never from bit tricks,
// so this shares no code path with the header.
namespace oracle {

struct Term {
    double coef;
    std::vector<int> mono; // strictly increasing axes in 0..3
};
using Poly = std::vector<Term>;

Poly simplify(const Poly &p) {
    Poly out;
    for (const auto &t : p) {
        if (t.coef == 0.0) continue;
        bool merged = false;
        for (auto &u : out)
            if (u.mono == t.mono) {
                u.coef += t.coef;
                merged = true;
                break;
            }
        if (!merged) out.push_back(t);
    }
    return out;
}

Poly wedge(const Poly &a, const Poly &b) {
    Poly out;
    for (const auto &ta : a)
        for (const auto &tb : b) {
            std::vector<int> mono = ta.mono;
            mono.insert(mono.end(), tb.mono.begin(), tb.mono.end());
            int swaps = 0;
            bool dup = false;
            for (size_t i = 0; i + 1 < mono.size() && !dup; ++i)
                for (size_t j = 0; j + 1 < mono.size() - i; ++j) {
                    if (mono[j] == mono[j + 1]) dup = true;
                    if (mono[j] > mono[j + 1]) {
                        std::swap(mono[j], mono[j + 1]);
                        ++swaps;
                    }
                }
            if (dup || (!mono.empty() &&
                        std::adjacent_find(mono.begin(), mono.end()) != mono.end()))
                continue;
            out.push_back({ta.coef * tb.coef * (swaps % 2 ? -1.0 : 1.0), mono});
        }
    return simplify(out);
}

Poly contract(int axis, const Poly &a) {
    Poly out;
    for (const auto &t : a) {
        auto it = std::find(t.mono.begin(), t.mono.end(), axis);
        if (it == t.mono.end()) continue;
        const int pos = int(it - t.mono.begin());
        std::vector<int> mono = t.mono;
        mono.erase(mono.begin() + pos);
        out.push_back({t.coef * (pos % 2 ? -1.0 : 1.0), mono});
    }
    return simplify(out);
}

Poly dot(const Poly &a, const Poly &b, int deg_a) {
    Poly out;
    const double outer = (deg_a % 2 == 1) ? 1.0 : -1.0;
    for (int axis = 0; axis < 4; ++axis) {
        Poly w = wedge(contract(axis, a), contract(axis, b));
        for (auto &t : w) out.push_back({outer * t.coef, t.mono});
    }
    return simplify(out);
}

// lex monomials of a degree, generated by nested ascending loops
std::vector<std::vector<int>> monos(int deg) {
    std::vector<std::vector<int>> out;
    if (deg == 0) out.push_back({});
    if (deg == 1)
        for (int i = 0; i < 4; ++i) out.push_back({i});
    if (deg == 2)
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) out.push_back({i, j});
    if (deg == 3)
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                for (int k = j + 1; k < 4; ++k) out.push_back({i, j, k});
    if (deg == 4) out.push_back({0, 1, 2, 3});
    return out;
}

Poly from_form(const FiberForm &f) {
    Poly p;
    auto ms = monos(f.degree);
    for (size_t i = 0; i < ms.size(); ++i)
        if (f.c[i] != 0.0) p.push_back({f.c[i], ms[i]});
    return p;
}

FiberForm to_form(const Poly &p, int deg) {
    FiberForm f(deg);
    auto ms = monos(deg);
    for (const auto &t : simplify(p)) {
        auto it = std::find(ms.begin(), ms.end(), t.mono);
        REQUIRE(it != ms.end());
        f.c[it - ms.begin()] += t.coef;
    }
    return f;
}

} // namespace oracle

namespace {

FiberForm random_form(Rng &rng, int deg) {
    FiberForm f(deg);
    for (int i = 0; i < form_dim(deg); ++i) f.c[i] = rng.next_sym();
    return f;
}

Su2Form random_su2form(Rng &rng, int deg) {
    Su2Form f(deg);
    for (int l = 0; l < 3; ++l)
        for (int i = 0; i < form_dim(deg); ++i) f.m(l, i) = rng.next_sym();
    return f;
}

double form_dist(const FiberForm &a, const FiberForm &b) {
    REQUIRE(a.degree == b.degree);
    double s = 0;
    for (int i = 0; i < form_dim(a.degree); ++i) s += std::abs(a.c[i] - b.c[i]);
    return s;
}

const Su2Element kEta1(1, 0, 0), kEta2(0, 1, 0), kEta3(0, 0, 1);

} // namespace

TEST_CASE("wedge matches the list oracle on every basis pair") {
    for (int p = 0; p <= 4; ++p)
        for (int q = 0; p + q <= 4; ++q)
            for (int i = 0; i < form_dim(p); ++i)
                for (int j = 0; j < form_dim(q); ++j) {
                    FiberForm a = fiber_basis(p, i), b = fiber_basis(q, j);
                    FiberForm got = wedge(a, b);
                    FiberForm want = oracle::to_form(
                        oracle::wedge(oracle::from_form(a), oracle::from_form(b)), p + q);
                    REQUIRE(form_dist(got, want) == 0.0);
                }
}

TEST_CASE("contraction product matches the list oracle on every basis pair") {
    for (int p = 1; p <= 4; ++p)
        for (int q = 1; q <= 4; ++q) {
            if (p + q - 2 > 4) continue;
            for (int i = 0; i < form_dim(p); ++i)
                for (int j = 0; j < form_dim(q); ++j) {
                    FiberForm a = fiber_basis(p, i), b = fiber_basis(q, j);
                    FiberForm got = contract_dot(a, b);
                    FiberForm want = oracle::to_form(
                        oracle::dot(oracle::from_form(a), oracle::from_form(b), p),
                        p + q - 2);
                    REQUIRE(form_dist(got, want) == 0.0);
                }
        }
}

TEST_CASE("contraction product fixed values") {
    FiberForm e1 = fiber_basis(1, 0), e2 = fiber_basis(1, 1);
    FiberForm w1 = omega_form(0), w2 = omega_form(1), w3 = omega_form(2);

    SECTION("e1 . w1 = e2 and w1 . e1 = -e2") {
        REQUIRE(form_dist(contract_dot(e1, w1), e2) == 0.0);
        REQUIRE(form_dist(contract_dot(w1, e1), e2 * -1.0) == 0.0);
    }

    SECTION("w_i . w_j = -2 eps_ijk w_k, diagonal zero") {
        REQUIRE(form_dist(contract_dot(w1, w2), w3 * -2.0) == 0.0);
        REQUIRE(form_dist(contract_dot(w2, w3), w1 * -2.0) == 0.0);
        REQUIRE(form_dist(contract_dot(w3, w1), w2 * -2.0) == 0.0);
        REQUIRE(form_dist(contract_dot(w2, w1), w3 * 2.0) == 0.0);
        FiberForm z = contract_dot(w1, w1);
        REQUIRE(form_dist(z, FiberForm(2)) == 0.0);
    }

    SECTION("2-form dotted into a 1-form is minus the theta-weighted insertion") {
        Rng rng(11);
        FiberForm alpha = random_form(rng, 2);
        FiberForm theta = random_form(rng, 1);
        FiberForm got = contract_dot(alpha, theta);
        oracle::Poly acc;
        for (int axis = 0; axis < 4; ++axis) {
            oracle::Poly ia = oracle::contract(axis, oracle::from_form(alpha));
            for (auto &t : ia) acc.push_back({-theta.c[axis] * t.coef, t.mono});
        }
        REQUIRE(form_dist(got, oracle::to_form(acc, 1)) < 1e-15);
    }
}

TEST_CASE("hodge star") {
    // *e1 = e234, *w2 = w2, square is the identity in every degree
    REQUIRE(form_dist(hodge_star(fiber_basis(1, 0)), fiber_basis(3, 3)) == 0.0);
    REQUIRE(form_dist(hodge_star(omega_form(1)), omega_form(1)) == 0.0);
    for (int p = 0; p <= 4; ++p)
        for (int i = 0; i < form_dim(p); ++i) {
            FiberForm b = fiber_basis(p, i);
            // ** = (-1)^{p(4-p)}
            const double sq = (p % 2 == 0) ? 1.0 : -1.0;
            REQUIRE(form_dist(hodge_star(hodge_star(b)), b * sq) == 0.0);
            // e^I ^ *e^I = vol
            if (p > 0 && p < 4) {
                FiberForm vol = wedge(b, hodge_star(b));
                REQUIRE(vol.c[0] == 1.0);
            }
        }
}

TEST_CASE("self-dual basis and projection") {
    FiberForm w1 = omega_form(0);
    SECTION("w1 ^ w1 = 2 vol, cross wedges vanish") {
        REQUIRE(wedge(w1, w1).c[0] == 2.0);
        REQUIRE(form_dist(wedge(omega_form(0), omega_form(1)), FiberForm(4)) == 0.0);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                REQUIRE(fiber_inner(omega_form(i), omega_form(j)) ==
                        (i == j ? 2.0 : 0.0));
    }
    SECTION("projector fixes the basis, kills the anti-self-dual part") {
        for (int i = 0; i < 3; ++i)
            REQUIRE(form_dist(selfdual_project(omega_form(i)), omega_form(i)) == 0.0);
        FiberForm anti(2);
        anti.c[0] = 1.0;
        anti.c[5] = -1.0; // e12 - e34
        REQUIRE(form_dist(selfdual_project(anti), FiberForm(2)) == 0.0);
    }
    SECTION("projector is idempotent and symmetric, eigenvalue split is 3+3") {
        Rng rng(5);
        FiberForm u = random_form(rng, 2), v = random_form(rng, 2);
        REQUIRE(form_dist(selfdual_project(selfdual_project(u)), selfdual_project(u)) <
                1e-15);
        REQUIRE(std::abs(fiber_inner(selfdual_project(u), v) -
                         fiber_inner(u, selfdual_project(v))) < 1e-15);
        // *P+ = P+ and * has trace 0 on 2-forms
        FiberForm su = hodge_star(selfdual_project(u));
        REQUIRE(form_dist(su, selfdual_project(u)) < 1e-15);
    }
    SECTION("coordinate round trip") {
        Rng rng(6);
        Eigen::Vector3d v(rng.next_sym(), rng.next_sym(), rng.next_sym());
        REQUIRE((sd_coords(sd_to_lex(v)) - v).norm() < 1e-15);
    }
}

TEST_CASE("su(2) bracket and inner product") {
    REQUIRE((lie_bracket(kEta1, kEta2) - 2 * kEta3).norm() == 0.0);
    REQUIRE((lie_bracket(kEta2, kEta3) - 2 * kEta1).norm() == 0.0);
    REQUIRE((lie_bracket(kEta3, kEta1) - 2 * kEta2).norm() == 0.0);
    Rng rng(7);
    Su2Element x(rng.next_sym(), rng.next_sym(), rng.next_sym());
    Su2Element y(rng.next_sym(), rng.next_sym(), rng.next_sym());
    Su2Element z(rng.next_sym(), rng.next_sym(), rng.next_sym());
    // Jacobi and ad-invariance
    Su2Element jac = lie_bracket(x, lie_bracket(y, z)) +
                     lie_bracket(y, lie_bracket(z, x)) +
                     lie_bracket(z, lie_bracket(x, y));
    REQUIRE(jac.norm() < 1e-14);
    REQUIRE(std::abs(lie_inner(lie_bracket(x, y), z) +
                     lie_inner(y, lie_bracket(x, z))) < 1e-14);
}

TEST_CASE("su(2)-valued contraction products") {
    SECTION("simple tensors multiply componentwise") {
        Su2Form A = Su2Form::simple(kEta1, sd_to_lex({1, 0, 0}));
        Su2Form B = Su2Form::simple(kEta2, sd_to_lex({0, 1, 0}));
        Su2Form got = bracket_dot(A, B); // lex 2-form output
        Su2Form want = Su2Form::simple(kEta3, sd_to_lex({0, 0, -4}));
        REQUIRE((got.m - want.m).cwiseAbs().maxCoeff() == 0.0);
    }
    SECTION("symmetry of the mixed products") {
        Rng rng(8);
        // (1,2): [a.b] = [b.a]
        Su2Form a = random_su2form(rng, 1), b = random_su2form(rng, 2);
        Su2Form ab = bracket_dot(a, b), ba = bracket_dot(b, a);
        REQUIRE((ab.m - ba.m).cwiseAbs().maxCoeff() < 1e-14);
        // (2,2): [u.v] = [v.u]
        Su2Form u = random_su2form(rng, 2), v = random_su2form(rng, 2);
        Su2Form uv = bracket_dot(u, v), vu = bracket_dot(v, u);
        REQUIRE((uv.m - vu.m).cwiseAbs().maxCoeff() < 1e-14);
    }
    SECTION("squared self-dual field against the closed form") {
        // B = eta1 w1 + eta2 w2: [B.B] = -8 eta3 w3
        Su2Form B(2);
        Su2Form t1 = Su2Form::simple(kEta1, sd_to_lex({1, 0, 0}));
        B = t1;
        B += Su2Form::simple(kEta2, sd_to_lex({0, 1, 0}));
        Su2Form got = bracket_dot(B, B);
        Su2Form want = Su2Form::simple(kEta3, sd_to_lex({0, 0, -8}));
        REQUIRE((got.m - want.m).cwiseAbs().maxCoeff() == 0.0);
    }
    SECTION("projected wedge square of a 1-form") {
        Su2Form a(1);
        a.m.col(0) = kEta1;
        a.m.col(1) = kEta2;
        Su2Form got = bracket_wedge_plus(a, a); // w coordinates
        REQUIRE((got.m.col(0) - kEta3).norm() == 0.0);
        REQUIRE(got.m.col(1).norm() == 0.0);
        REQUIRE(got.m.col(2).norm() == 0.0);
    }
    SECTION("projected wedge against an independent expansion") {
        Rng rng(9);
        Su2Form x = random_su2form(rng, 1), y = random_su2form(rng, 1);
        Su2Form got = bracket_wedge_plus(x, y);
        // expand (1/2)[x ^ y] in lex with the oracle wedge, then project
        Eigen::Matrix<double, 3, 6> lex = Eigen::Matrix<double, 3, 6>::Zero();
        for (int l = 0; l < 3; ++l) {
            oracle::Poly acc;
            for (int mu = 0; mu < 4; ++mu)
                for (int nu = 0; nu < 4; ++nu) {
                    Su2Element br = lie_bracket(x.m.col(mu), y.m.col(nu));
                    oracle::Poly w = oracle::wedge({{1.0, {mu}}}, {{1.0, {nu}}});
                    for (auto &t : w) acc.push_back({0.5 * br[l] * t.coef, t.mono});
                }
            FiberForm row = oracle::to_form(acc, 2);
            for (int k = 0; k < 6; ++k) lex(l, k) = row.c[k];
        }
        for (int w = 0; w < 3; ++w) {
            Su2Element want = Su2Element::Zero();
            for (int k = 0; k < 6; ++k) want += 0.5 * kOmegaLex[w][k] * lex.col(k);
            REQUIRE((got.m.col(w) - want).norm() < 1e-14);
        }
    }
}

TEST_CASE("rank, normal form, rank-one factorization") {
    Rng rng(10);
    SECTION("rank ladder") {
        Su2Form zero(2);
        REQUIRE(rank(zero) == 0);
        REQUIRE(rank(Su2Form::simple(kEta1, sd_to_lex({1, 0, 0})).degree == 2
                         ? Su2Form::simple(kEta1, sd_to_lex({1, 0, 0}))
                         : zero) == 1);
        Su2Form two = Su2Form::simple(kEta1, sd_to_lex({1, 0, 0}));
        two += Su2Form::simple(kEta2, sd_to_lex({0, 1, 0}));
        REQUIRE(rank(two) == 2);
        Su2Form three = two;
        three += Su2Form::simple(kEta3, sd_to_lex({0, 0, 1}));
        REQUIRE(rank(three) == 3);
    }
    SECTION("normal form reconstructs with special orthogonal factors") {
        for (int trial = 0; trial < 25; ++trial) {
            Su2Form b(2);
            for (int l = 0; l < 3; ++l)
                for (int w = 0; w < 3; ++w) b.m(l, w) = rng.next_sym();
            NormalForm nf = normal_form(b);
            REQUIRE(std::abs(nf.R.determinant() - 1.0) < 1e-12);
            REQUIRE(std::abs(nf.S.determinant() - 1.0) < 1e-12);
            REQUIRE((nf.R * nf.R.transpose() - Eigen::Matrix3d::Identity()).norm() <
                    1e-12);
            REQUIRE((nf.S * nf.S.transpose() - Eigen::Matrix3d::Identity()).norm() <
                    1e-12);
            Eigen::Matrix3d rec = nf.R.transpose() * nf.diag.asDiagonal() * nf.S;
            REQUIRE((rec - b.m.leftCols<3>()).norm() < 1e-12);
            REQUIRE(std::abs(nf.diag[0]) + 1e-15 >= std::abs(nf.diag[1]));
            REQUIRE(std::abs(nf.diag[1]) + 1e-15 >= std::abs(nf.diag[2]));
        }
    }
    SECTION("rank-one factor round trip and failure mode") {
        Su2Element xi(0.3, -0.8, 0.5);
        Eigen::Vector3d w(1.5, 0.25, -2.0);
        Su2Form b = Su2Form::simple(xi, sd_to_lex(w));
        Rank1Factor f = rank1_factor(b);
        REQUIRE(std::abs(f.xi.norm() - 1.0) < 1e-12);
        Eigen::Vector3d wrec = sd_coords(f.omega);
        Eigen::Matrix3d rec = f.xi * wrec.transpose();
        REQUIRE((rec - b.m.leftCols<3>()).norm() < 1e-12);
        Su2Form two = Su2Form::simple(kEta1, sd_to_lex({1, 0, 0}));
        two += Su2Form::simple(kEta2, sd_to_lex({0, 1, 0}));
        REQUIRE_THROWS_AS(rank1_factor(two), std::invalid_argument);
        Rank1Factor z = rank1_factor(Su2Form(2));
        REQUIRE(std::abs(z.xi.norm() - 1.0) < 1e-15);
        REQUIRE(fiber_inner(z.omega, z.omega) == 0.0);
    }
}

TEST_CASE("radial split of self-dual 2-forms") {
    SECTION("w1 splits as radial (2,0,0), tangential (2,0,0)") {
        RadialSplit rs = radial_decompose(omega_form(0));
        REQUIRE((rs.radial - Eigen::Vector3d(2, 0, 0)).norm() == 0.0);
        REQUIRE((rs.tangential - Eigen::Vector3d(2, 0, 0)).norm() == 0.0);
    }
    SECTION("self-dual inputs split evenly and reassemble exactly") {
        Rng rng(12);
        for (int trial = 0; trial < 10; ++trial) {
            Eigen::Vector3d v(rng.next_sym(), rng.next_sym(), rng.next_sym());
            FiberForm f = sd_to_lex(v);
            RadialSplit rs = radial_decompose(f);
            REQUIRE((rs.radial - 2 * v).norm() < 1e-15);
            REQUIRE((rs.tangential - 2 * v).norm() < 1e-15);
            REQUIRE(form_dist(radial_assemble(rs), f) < 1e-15);
        }
    }
    SECTION("rejects inputs with an anti-self-dual part") {
        FiberForm bad(2);
        bad.c[0] = 1.0;
        bad.c[5] = -1.0;
        REQUIRE_THROWS_AS(radial_decompose(bad), std::invalid_argument);
    }
}

TEST_CASE("frame rotations") {
    Rng rng(13);
    Quat qL = quat_exp({rng.next_sym(), rng.next_sym(), rng.next_sym()});
    Quat qR = quat_exp({rng.next_sym(), rng.next_sym(), rng.next_sym()});
    Eigen::Matrix4d Q = rot4(qL, qR);
    SECTION("rot4 is special orthogonal") {
        REQUIRE((Q * Q.transpose() - Eigen::Matrix4d::Identity()).norm() < 1e-13);
        REQUIRE(std::abs(Q.determinant() - 1.0) < 1e-13);
    }
    SECTION("rot3 realizes conjugation") {
        Su2Element v(rng.next_sym(), rng.next_sym(), rng.next_sym());
        Quat pv{0, v[0], v[1], v[2]};
        Quat rot = qL * pv * qL.conj();
        Su2Element want(rot.x, rot.y, rot.z);
        REQUIRE((rot3(qL) * v - want).norm() < 1e-13);
        REQUIRE(std::abs(rot.w) < 1e-13);
    }
    SECTION("rotations respect wedge, inner product, star, and the projector") {
        FiberForm a = random_form(rng, 1), b = random_form(rng, 1);
        FiberForm u = random_form(rng, 2);
        FiberForm lhs = rotate_form(wedge(a, b), Q);
        FiberForm rhs = wedge(rotate_form(a, Q), rotate_form(b, Q));
        REQUIRE(form_dist(lhs, rhs) < 1e-13);
        REQUIRE(std::abs(fiber_inner(rotate_form(u, Q), rotate_form(u, Q)) -
                         fiber_inner(u, u)) < 1e-13);
        REQUIRE(form_dist(rotate_form(hodge_star(u), Q),
                          hodge_star(rotate_form(u, Q))) < 1e-13);
        REQUIRE(form_dist(rotate_form(selfdual_project(u), Q),
                          selfdual_project(rotate_form(u, Q))) < 1e-13);
    }
    SECTION("self-dual coordinates rotate by the left factor only") {
        FiberForm u = sd_to_lex({rng.next_sym(), rng.next_sym(), rng.next_sym()});
        Eigen::Vector3d got = sd_coords(rotate_form(u, Q));
        Eigen::Vector3d want = rot3(qL) * sd_coords(u);
        REQUIRE((got - want).norm() < 1e-13);
    }
    SECTION("contraction product is equivariant") {
        FiberForm a = random_form(rng, 2), b = random_form(rng, 1);
        FiberForm lhs = rotate_form(contract_dot(a, b), Q);
        FiberForm rhs = contract_dot(rotate_form(a, Q), rotate_form(b, Q));
        REQUIRE(form_dist(lhs, rhs) < 1e-12);
    }
}
