#pragma once

// Pointwise multilinear algebra of real exterior forms on an oriented
// orthonormal coframe {e^1..e^4} and of su(2)-valued forms.
//
// Conventions, fixed once and used everywhere:
//  * p-form coordinates live in the lexicographic basis
//      deg 1: e1 e2 e3 e4
//      deg 2: e12 e13 e14 e23 e24 e34
//      deg 3: e123 e124 e134 e234
//    and that basis is orthonormal for the fiber inner product.
//  * the self-dual line bundle is spanned by
//      w1 = e12 + e34,  w2 = e13 - e24,  w3 = e14 + e23
//    which are orthogonal of norm sqrt(2); self-dual objects are usually
//    stored by their (v1,v2,v3) coordinates in this basis, so every inner
//    product on stored self-dual coordinates carries the Gram weight 2.
//  * su(2) basis eta_1,eta_2,eta_3 with [eta_i,eta_j] = 2 eps_ijk eta_k and
//    <eta_i,eta_j> = delta_ij (realized by the quaternion units i,j,k, or by
//    eta_k = -i sigma_k); in coordinates [x,y] = 2 x cross y.
//  * the degree-(p+q-2) contraction product is
//      a . b = (-1)^(p-1) sum_i (i_{e_i} a) ^ (i_{e_i} b)
//    defined only for p,q >= 1.

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>

#include <Eigen/Dense>

namespace vwlab {

using Su2Element = Eigen::Vector3d;

inline constexpr int kFormDim[5] = {1, 4, 6, 4, 1};

inline int form_dim(int degree) {
    if (degree < 0 || degree > 4) throw std::invalid_argument("form degree out of range");
    return kFormDim[degree];
}

namespace detail {

// Basis p-vectors as 4-bit masks, lex order within each degree.
inline constexpr std::uint8_t kMaskOf[5][6] = {
    {0x0, 0, 0, 0, 0, 0},
    {0x1, 0x2, 0x4, 0x8, 0, 0},
    {0x3, 0x5, 0x9, 0x6, 0xA, 0xC},
    {0x7, 0xB, 0xD, 0xE, 0, 0},
    {0xF, 0, 0, 0, 0, 0},
};

inline int lex_of_mask(std::uint8_t m) {
    const int p = __builtin_popcount(m);
    for (int k = 0; k < kFormDim[p]; ++k)
        if (kMaskOf[p][k] == m) return k;
    throw std::logic_error("bad basis mask");
}

// sign of e^I ^ e^J as a multiple of e^{I u J}; 0 on overlap
inline int wedge_sign(std::uint8_t a, std::uint8_t b) {
    if (a & b) return 0;
    int swaps = 0;
    for (int i = 0; i < 4; ++i)
        if (b & (1 << i)) swaps += __builtin_popcount(a >> (i + 1));
    return (swaps & 1) ? -1 : 1;
}

// i_{e_i} e^I: sign and reduced mask; usable only when i is in I
inline int contract_sign(int axis, std::uint8_t m) {
    int before = __builtin_popcount(m & ((1 << axis) - 1));
    return (before & 1) ? -1 : 1;
}

} // namespace detail

struct FiberForm {
    int degree = 0;
    std::array<double, 6> c{};

    FiberForm() = default;
    explicit FiberForm(int deg) : degree(deg) { (void)form_dim(deg); }

    double &operator[](int i) { return c[i]; }
    double operator[](int i) const { return c[i]; }

    FiberForm &operator+=(const FiberForm &o) {
        if (degree != o.degree) throw std::invalid_argument("degree mismatch in +=");
        for (int i = 0; i < form_dim(degree); ++i) c[i] += o.c[i];
        return *this;
    }
    FiberForm operator*(double s) const {
        FiberForm r = *this;
        for (auto &v : r.c) v *= s;
        return r;
    }
};

inline FiberForm fiber_basis(int degree, int idx) {
    FiberForm f(degree);
    f.c[idx] = 1.0;
    return f;
}

inline double fiber_inner(const FiberForm &a, const FiberForm &b) {
    if (a.degree != b.degree) throw std::invalid_argument("degree mismatch in fiber_inner");
    double s = 0;
    for (int i = 0; i < form_dim(a.degree); ++i) s += a.c[i] * b.c[i];
    return s;
}

inline FiberForm wedge(const FiberForm &a, const FiberForm &b) {
    if (a.degree + b.degree > 4) throw std::invalid_argument("wedge degree overflow");
    FiberForm r(a.degree + b.degree);
    for (int i = 0; i < form_dim(a.degree); ++i) {
        if (a.c[i] == 0.0) continue;
        const std::uint8_t ma = detail::kMaskOf[a.degree][i];
        for (int j = 0; j < form_dim(b.degree); ++j) {
            if (b.c[j] == 0.0) continue;
            const std::uint8_t mb = detail::kMaskOf[b.degree][j];
            const int s = detail::wedge_sign(ma, mb);
            if (s) r.c[detail::lex_of_mask(ma | mb)] += s * a.c[i] * b.c[j];
        }
    }
    return r;
}

inline FiberForm contract_dot(const FiberForm &a, const FiberForm &b) {
    if (a.degree < 1 || b.degree < 1)
        throw std::invalid_argument("contraction undefined on 0-forms");
    const int p = a.degree, q = b.degree;
    const double outer = (p % 2 == 1) ? 1.0 : -1.0; // (-1)^(p-1)
    FiberForm r(p + q - 2);
    for (int axis = 0; axis < 4; ++axis) {
        for (int i = 0; i < form_dim(p); ++i) {
            const std::uint8_t ma = detail::kMaskOf[p][i];
            if (!(ma & (1 << axis)) || a.c[i] == 0.0) continue;
            const int sa = detail::contract_sign(axis, ma);
            const std::uint8_t ra = ma & ~(1 << axis);
            for (int j = 0; j < form_dim(q); ++j) {
                const std::uint8_t mb = detail::kMaskOf[q][j];
                if (!(mb & (1 << axis)) || b.c[j] == 0.0) continue;
                const int sb = detail::contract_sign(axis, mb);
                const std::uint8_t rb = mb & ~(1 << axis);
                const int sw = detail::wedge_sign(ra, rb);
                if (sw)
                    r.c[detail::lex_of_mask(std::uint8_t(ra | rb))] +=
                        outer * sa * sb * sw * a.c[i] * b.c[j];
            }
        }
    }
    return r;
}

inline FiberForm hodge_star(const FiberForm &a) {
    FiberForm r(4 - a.degree);
    for (int i = 0; i < form_dim(a.degree); ++i) {
        if (a.c[i] == 0.0) continue;
        const std::uint8_t m = detail::kMaskOf[a.degree][i];
        const std::uint8_t mc = std::uint8_t(0xF & ~m);
        r.c[detail::lex_of_mask(mc)] += detail::wedge_sign(m, mc) * a.c[i];
    }
    return r;
}

// self-dual basis in lex degree-2 coordinates
inline constexpr double kOmegaLex[3][6] = {
    {1, 0, 0, 0, 0, 1},
    {0, 1, 0, 0, -1, 0},
    {0, 0, 1, 1, 0, 0},
};

inline FiberForm omega_form(int i) {
    FiberForm f(2);
    for (int k = 0; k < 6; ++k) f.c[k] = kOmegaLex[i][k];
    return f;
}

inline Eigen::Vector3d sd_coords(const FiberForm &u) {
    if (u.degree != 2) throw std::invalid_argument("sd_coords needs a 2-form");
    Eigen::Vector3d v;
    for (int i = 0; i < 3; ++i) {
        double s = 0;
        for (int k = 0; k < 6; ++k) s += kOmegaLex[i][k] * u.c[k];
        v[i] = 0.5 * s;
    }
    return v;
}

inline FiberForm sd_to_lex(const Eigen::Vector3d &v) {
    FiberForm f(2);
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 6; ++k) f.c[k] += v[i] * kOmegaLex[i][k];
    return f;
}

inline FiberForm selfdual_project(const FiberForm &u) {
    if (u.degree != 2) throw std::invalid_argument("selfdual_project needs a 2-form");
    return sd_to_lex(sd_coords(u));
}

inline Su2Element lie_bracket(const Su2Element &x, const Su2Element &y) {
    return 2.0 * x.cross(y);
}

inline double lie_inner(const Su2Element &x, const Su2Element &y) { return x.dot(y); }

// su(2)-valued form: row = Lie index, column = form index (lex, or the
// self-dual w basis when the owner says so)
struct Su2Form {
    int degree = 0;
    Eigen::Matrix<double, 3, 6> m = Eigen::Matrix<double, 3, 6>::Zero();

    Su2Form() = default;
    explicit Su2Form(int deg) : degree(deg) { (void)form_dim(deg); }

    static Su2Form simple(const Su2Element &xi, const FiberForm &alpha) {
        Su2Form f(alpha.degree);
        for (int k = 0; k < form_dim(alpha.degree); ++k) f.m.col(k) = xi * alpha.c[k];
        return f;
    }

    Su2Form &operator+=(const Su2Form &o) {
        if (degree != o.degree) throw std::invalid_argument("degree mismatch in +=");
        m += o.m;
        return *this;
    }
    Su2Form operator*(double s) const {
        Su2Form r = *this;
        r.m *= s;
        return r;
    }
};

// [X . Y] on lex-stored su(2) forms
inline Su2Form bracket_dot(const Su2Form &a, const Su2Form &b) {
    FiberForm probe = contract_dot(fiber_basis(a.degree, 0), fiber_basis(b.degree, 0));
    Su2Form r(probe.degree);
    for (int f = 0; f < form_dim(a.degree); ++f) {
        if (a.m.col(f).isZero(0)) continue;
        for (int g = 0; g < form_dim(b.degree); ++g) {
            const FiberForm w = contract_dot(fiber_basis(a.degree, f), fiber_basis(b.degree, g));
            const Su2Element br = lie_bracket(a.m.col(f), b.m.col(g));
            for (int k = 0; k < form_dim(r.degree); ++k)
                if (w.c[k] != 0.0) r.m.col(k) += w.c[k] * br;
        }
    }
    return r;
}

// (1/2) P+ [x ^ y] for su(2)-valued 1-forms, returned in w coordinates.
// For x == y this is the quadratic curvature term: a = eta1 e1 + eta2 e2
// gives eta3 (x) w1.
inline Su2Form bracket_wedge_plus(const Su2Form &x, const Su2Form &y) {
    if (x.degree != 1 || y.degree != 1)
        throw std::invalid_argument("bracket_wedge_plus needs 1-forms");
    Eigen::Matrix<double, 3, 6> lex = Eigen::Matrix<double, 3, 6>::Zero();
    static constexpr int kPair[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    for (int k = 0; k < 6; ++k) {
        const int i = kPair[k][0], j = kPair[k][1];
        lex.col(k) = 0.5 * (lie_bracket(x.m.col(i), y.m.col(j)) -
                            lie_bracket(x.m.col(j), y.m.col(i)));
    }
    Su2Form r(2);
    for (int w = 0; w < 3; ++w) {
        Su2Element v = Su2Element::Zero();
        for (int k = 0; k < 6; ++k) v += 0.5 * kOmegaLex[w][k] * lex.col(k);
        r.m.col(w) = v;
    }
    return r;
}

inline Su2Form sd_expand(const Su2Form &b) {
    Su2Form r(2);
    r.m.setZero();
    for (int w = 0; w < 3; ++w)
        for (int k = 0; k < 6; ++k) r.m.col(k) += b.m.col(w) * kOmegaLex[w][k];
    return r;
}

inline int rank(const Su2Form &b, double eps_rank = 1e-10) {
    Eigen::Matrix3d coords = b.m.leftCols<3>();
    Eigen::JacobiSVD<Eigen::Matrix3d> svd(coords);
    const auto &s = svd.singularValues();
    if (s[0] == 0.0) return 0;
    int r = 0;
    for (int i = 0; i < 3; ++i)
        if (s[i] > eps_rank * s[0]) ++r;
    return r;
}

struct NormalForm {
    Eigen::Matrix3d R; // SO(3) on the Lie index
    Eigen::Matrix3d S; // SO(3) on the w index
    Eigen::Vector3d diag;
};

// coords(B) = R^T diag S with det R = det S = +1; any negative determinant is
// pushed into the diag entries
inline NormalForm normal_form(const Su2Form &b) {
    Eigen::Matrix3d coords = b.m.leftCols<3>();
    Eigen::JacobiSVD<Eigen::Matrix3d> svd(coords, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Eigen::Matrix3d u = svd.matrixU(), v = svd.matrixV();
    Eigen::Vector3d d = svd.singularValues();
    if (u.determinant() < 0) {
        u.col(2) *= -1;
        d[2] *= -1;
    }
    if (v.determinant() < 0) {
        v.col(2) *= -1;
        d[2] *= -1;
    }
    NormalForm nf;
    nf.R = u.transpose();
    nf.S = v.transpose();
    nf.diag = d;
    return nf;
}

struct Rank1Factor {
    Su2Element xi;
    FiberForm omega; // lex 2-form
};

inline Rank1Factor rank1_factor(const Su2Form &b, double eps_rank = 1e-10) {
    if (rank(b, eps_rank) >= 2) throw std::invalid_argument("rank1_factor: rank exceeds 1");
    Eigen::Matrix3d coords = b.m.leftCols<3>();
    if (coords.isZero(0)) return {Su2Element(1, 0, 0), FiberForm(2)};
    Eigen::JacobiSVD<Eigen::Matrix3d> svd(coords, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Su2Element xi = svd.matrixU().col(0);
    Eigen::Vector3d w = svd.singularValues()[0] * svd.matrixV().col(0);
    double flip = 1.0;
    for (int i = 0; i < 3; ++i) {
        if (xi[i] != 0.0) {
            flip = xi[i] > 0 ? 1.0 : -1.0;
            break;
        }
    }
    return {flip * xi, sd_to_lex(flip * w)};
}

struct RadialSplit {
    Eigen::Vector3d radial;     // coefficients of (1/2) e0 ^ (r_j e^j)
    Eigen::Vector3d tangential; // coefficients in the slice basis {e23', e31', e12'}
};

// Frame role: axis 1 is e0 = dr, axes 2..4 are the slice frame. A self-dual
// F splits as (1/2) e0 ^ r + (1/2) t with r = t componentwise.
inline RadialSplit radial_decompose(const FiberForm &f) {
    if (f.degree != 2) throw std::invalid_argument("radial_decompose needs a 2-form");
    FiberForm anti = f;
    const FiberForm sd = selfdual_project(f);
    for (int i = 0; i < 6; ++i) anti.c[i] -= sd.c[i];
    double mag = std::sqrt(fiber_inner(f, f));
    if (std::sqrt(fiber_inner(anti, anti)) > 1e-12 * std::max(1.0, mag))
        throw std::invalid_argument("radial_decompose needs a self-dual input");
    RadialSplit rs;
    rs.radial = {2 * f.c[0], 2 * f.c[1], 2 * f.c[2]};
    rs.tangential = {2 * f.c[5], -2 * f.c[4], 2 * f.c[3]};
    return rs;
}

inline FiberForm radial_assemble(const RadialSplit &rs) {
    FiberForm f(2);
    f.c[0] = 0.5 * rs.radial[0];
    f.c[1] = 0.5 * rs.radial[1];
    f.c[2] = 0.5 * rs.radial[2];
    f.c[5] = 0.5 * rs.tangential[0];
    f.c[4] = -0.5 * rs.tangential[1];
    f.c[3] = 0.5 * rs.tangential[2];
    return f;
}

// ---------------------------------------------------------------- rotations

struct Quat {
    double w = 1, x = 0, y = 0, z = 0;

    Quat conj() const { return {w, -x, -y, -z}; }
    double norm() const { return std::sqrt(w * w + x * x + y * y + z * z); }

    Quat operator*(const Quat &o) const {
        return {w * o.w - x * o.x - y * o.y - z * o.z,
                w * o.x + x * o.w + y * o.z - z * o.y,
                w * o.y - x * o.z + y * o.w + z * o.x,
                w * o.z + x * o.y - y * o.x + z * o.w};
    }
};

inline Quat quat_exp(const Su2Element &p) {
    const double t = p.norm();
    if (t < 1e-300) return {1, 0, 0, 0};
    const double s = std::sin(t) / t;
    return {std::cos(t), s * p[0], s * p[1], s * p[2]};
}

// rotation with q v conj(q) = R(q) v on pure quaternions
inline Eigen::Matrix3d rot3(const Quat &q) {
    Eigen::Matrix3d r;
    const double w = q.w, x = q.x, y = q.y, z = q.z;
    r << 1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y),
        2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x),
        2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y);
    return r;
}

// SO(4) via the quaternion pair: v -> qL v conj(qR) on R^4 = H with basis
// (1,i,j,k) matching (e1..e4). Self-dual coordinates rotate by rot3(qL).
inline Eigen::Matrix4d rot4(const Quat &qL, const Quat &qR) {
    Eigen::Matrix4d m;
    const Quat basis[4] = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
    for (int j = 0; j < 4; ++j) {
        const Quat v = qL * basis[j] * qR.conj();
        m(0, j) = v.w;
        m(1, j) = v.x;
        m(2, j) = v.y;
        m(3, j) = v.z;
    }
    return m;
}

// coordinates of a p-form after the frame change with matrix Q on 1-form
// coordinates
inline FiberForm rotate_form(const FiberForm &f, const Eigen::Matrix4d &q) {
    if (f.degree == 0 || f.degree == 4) return f;
    if (f.degree == 1) {
        FiberForm r(1);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) r.c[i] += q(i, j) * f.c[j];
        return r;
    }
    FiberForm r(f.degree);
    for (int j = 0; j < form_dim(f.degree); ++j) {
        if (f.c[j] == 0.0) continue;
        // push each basis monomial through Q one factor at a time
        FiberForm acc(0);
        acc.c[0] = f.c[j];
        std::uint8_t m = detail::kMaskOf[f.degree][j];
        for (int axis = 0; axis < 4; ++axis) {
            if (!(m & (1 << axis))) continue;
            FiberForm e1(1);
            for (int i = 0; i < 4; ++i) e1.c[i] = q(i, axis);
            acc = wedge(acc, e1);
        }
        r += acc;
    }
    return r;
}

} // namespace vwlab
