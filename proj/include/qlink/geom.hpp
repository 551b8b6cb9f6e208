#pragma once

// Continuous quandles: real and complex unit spheres, complex projective
// spaces, Grassmannians (all via the unitary reflection-by-q isometries),
// and the conjugacy class of a unipotent matrix in SL(2,C) in its
// two-complex-coordinate model.

#include <array>
#include <cmath>
#include <complex>
#include <random>
#include <string>
#include <vector>

#include "qlink/quandle.hpp"

namespace qlink {

using cplx = std::complex<double>;

inline constexpr double kUnitTol = 1e-12;   // construction tolerance
inline constexpr double kCheckTol = 1e-10;  // identity-check tolerance

namespace vecops {

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

inline void normalize(std::vector<double>& a) {
    double n = norm(a);
    if (n < 1e-14) throw input_error("cannot normalize a near-zero vector");
    for (double& v : a) v /= n;
}

/// Hermitian inner product, linear in the first argument.
inline cplx hdot(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    cplx s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * std::conj(b[i]);
    return s;
}

inline double hnorm(const std::vector<cplx>& a) { return std::sqrt(std::real(hdot(a, a))); }

inline void hnormalize(std::vector<cplx>& a) {
    double n = hnorm(a);
    if (n < 1e-14) throw input_error("cannot normalize a near-zero vector");
    for (cplx& v : a) v /= n;
}

/// Orthonormal basis of the orthogonal complement of a unit vector p,
/// via the Householder reflection sending p to -sign(p_0) e_0.
inline std::vector<std::vector<double>> real_complement(const std::vector<double>& p) {
    const std::size_t n = p.size();
    double s = p[0] >= 0 ? 1.0 : -1.0;
    std::vector<double> v = p;
    v[0] += s;
    double vv = 2.0 * (1.0 + s * p[0]);
    std::vector<std::vector<double>> basis;
    basis.reserve(n - 1);
    for (std::size_t j = 1; j < n; ++j) {
        std::vector<double> t(n, 0.0);
        t[j] = 1.0;
        double f = 2.0 * v[j] / vv;
        for (std::size_t i = 0; i < n; ++i) t[i] -= f * v[i];
        basis.push_back(std::move(t));
    }
    return basis;
}

/// Complex analogue: unit vectors completing u to a unitary basis.
inline std::vector<std::vector<cplx>> complex_complement(const std::vector<cplx>& u) {
    const std::size_t m = u.size();
    cplx mu = std::abs(u[0]) > 1e-14 ? u[0] / std::abs(u[0]) : cplx(1, 0);
    std::vector<cplx> v = u;
    v[0] += mu;
    double vv = 2.0 * (1.0 + std::abs(u[0]));
    std::vector<std::vector<cplx>> basis;
    basis.reserve(m - 1);
    for (std::size_t j = 1; j < m; ++j) {
        std::vector<cplx> t(m, cplx(0, 0));
        t[j] = 1.0;
        cplx f = 2.0 * std::conj(v[j]) / vv;
        for (std::size_t i = 0; i < m; ++i) t[i] -= f * v[i];
        basis.push_back(std::move(t));
    }
    return basis;
}

inline void push_interleaved(std::vector<double>& out, const std::vector<cplx>& v) {
    for (const cplx& z : v) {
        out.push_back(z.real());
        out.push_back(z.imag());
    }
}

}  // namespace vecops

// ---------------------------------------------------------------------------
// Real spheres S^d with point reflections: a*b = 2<a,b>b - a.
// ---------------------------------------------------------------------------

struct SphereQuandle {
    using element = std::vector<double>;
    int d;  // sphere dimension; ambient R^{d+1}

    explicit SphereQuandle(int d_) : d(d_) {
        if (d < 1) throw input_error("sphere dimension must be >= 1");
    }

    std::string name() const { return "sphere:" + std::to_string(d); }

    element op(const element& a, const element& b) const {
        double s = 2.0 * vecops::dot(a, b);
        element r(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * b[i] - a[i];
        vecops::normalize(r);
        return r;
    }

    // Point reflections are involutions, so the sphere is a kei.
    element inv_op(const element& a, const element& b) const { return op(a, b); }

    std::size_t embed_dim() const { return static_cast<std::size_t>(d) + 1; }
    std::size_t param_dim() const { return embed_dim(); }
    std::size_t tangent_dim() const { return static_cast<std::size_t>(d); }

    void diff(const element& base, const element& p, double* out) const {
        for (std::size_t i = 0; i < p.size(); ++i) out[i] = p[i] - base[i];
    }

    double dist(const element& a, const element& b) const {
        double s = 0;
        for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
        return std::sqrt(s);
    }

    std::vector<double> params(const element& p) const { return p; }

    element make(std::vector<double> params) const {
        vecops::normalize(params);
        return params;
    }

    std::vector<std::vector<double>> tangent_basis(const element& p) const {
        return vecops::real_complement(p);
    }

    element random_point(std::mt19937_64& rng) const {
        std::normal_distribution<double> g;
        element p(embed_dim());
        for (double& v : p) v = g(rng);
        vecops::normalize(p);
        return p;
    }
};

// ---------------------------------------------------------------------------
// Unit spheres in hermitian space, with i^q_b(a) = q a + (1-q)<a,b>b.
// ---------------------------------------------------------------------------

/// i^q_a applied to an arbitrary vector (identity on the line of a,
/// multiplication by q on its orthogonal complement).
inline std::vector<cplx> csphere_reflect(const std::vector<cplx>& v, const std::vector<cplx>& a,
                                         cplx q) {
    cplx c = vecops::hdot(v, a) / vecops::hdot(a, a);
    std::vector<cplx> r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = q * v[i] + (1.0 - q) * c * a[i];
    return r;
}

struct CSphereQuandle {
    using element = std::vector<cplx>;
    int m;         // complex dimension of the ambient space
    double phase;  // q = exp(i*phase), |q| = 1 exactly
    cplx q;

    CSphereQuandle(int m_, double phase_) : m(m_), phase(phase_), q(std::polar(1.0, phase_)) {
        if (m < 1) throw input_error("complex sphere needs m >= 1");
    }

    std::string name() const { return "csphere:" + std::to_string(m) + ":q=" + std::to_string(phase); }

    element apply(const element& a, const element& b, cplx qq) const {
        element r = csphere_reflect(a, b, qq);
        vecops::hnormalize(r);
        return r;
    }

    element op(const element& a, const element& b) const { return apply(a, b, q); }
    element inv_op(const element& a, const element& b) const { return apply(a, b, std::conj(q)); }

    std::size_t embed_dim() const { return 2 * static_cast<std::size_t>(m); }
    std::size_t param_dim() const { return embed_dim(); }
    std::size_t tangent_dim() const { return 2 * static_cast<std::size_t>(m) - 1; }

    void diff(const element& base, const element& p, double* out) const {
        for (int i = 0; i < m; ++i) {
            cplx z = p[i] - base[i];
            out[2 * i] = z.real();
            out[2 * i + 1] = z.imag();
        }
    }

    double dist(const element& a, const element& b) const {
        double s = 0;
        for (int i = 0; i < m; ++i) s += std::norm(a[i] - b[i]);
        return std::sqrt(s);
    }

    std::vector<double> params(const element& p) const {
        std::vector<double> out;
        out.reserve(embed_dim());
        vecops::push_interleaved(out, p);
        return out;
    }

    element make(const std::vector<double>& params) const {
        element p(m);
        for (int i = 0; i < m; ++i) p[i] = cplx(params[2 * i], params[2 * i + 1]);
        vecops::hnormalize(p);
        return p;
    }

    std::vector<std::vector<double>> tangent_basis(const element& p) const {
        return vecops::real_complement(params(p));
    }

    element random_point(std::mt19937_64& rng) const {
        std::normal_distribution<double> g;
        element p(m);
        for (cplx& z : p) z = cplx(g(rng), g(rng));
        vecops::hnormalize(p);
        return p;
    }
};

// ---------------------------------------------------------------------------
// Complex projective spaces: lines through the origin, represented by a
// canonical unit vector whose first significant coordinate is real > 0.
// ---------------------------------------------------------------------------

struct ProjQuandle {
    using element = std::vector<cplx>;
    int m;
    double phase;
    cplx q;

    ProjQuandle(int m_, double phase_) : m(m_), phase(phase_), q(std::polar(1.0, phase_)) {
        if (m < 2) throw input_error("projective space needs m >= 2");
    }

    std::string name() const { return "proj:" + std::to_string(m) + ":q=" + std::to_string(phase); }

    static element canonicalize(element u) {
        vecops::hnormalize(u);
        double maxmod = 0;
        for (const cplx& z : u) maxmod = std::max(maxmod, std::abs(z));
        for (cplx& z : u) {
            if (std::abs(z) > 1e-8 * maxmod) {
                cplx ph = std::conj(z) / std::abs(z);
                for (cplx& w : u) w *= ph;
                break;
            }
        }
        return u;
    }

    element op(const element& a, const element& b) const {
        return canonicalize(csphere_reflect(a, b, q));
    }
    element inv_op(const element& a, const element& b) const {
        return canonicalize(csphere_reflect(a, b, std::conj(q)));
    }

    std::size_t embed_dim() const { return 2 * static_cast<std::size_t>(m); }
    std::size_t param_dim() const { return embed_dim(); }
    std::size_t tangent_dim() const { return 2 * (static_cast<std::size_t>(m) - 1); }

    /// Difference of representatives after aligning p's phase to base;
    /// its norm is the phase-minimal chordal distance between the lines.
    void diff(const element& base, const element& p, double* out) const {
        cplx z = vecops::hdot(p, base);
        cplx ph = std::abs(z) > 1e-14 ? std::conj(z) / std::abs(z) : cplx(1, 0);
        for (int i = 0; i < m; ++i) {
            cplx w = ph * p[i] - base[i];
            out[2 * i] = w.real();
            out[2 * i + 1] = w.imag();
        }
    }

    double dist(const element& a, const element& b) const {
        // via the aligned difference; the inner-product form sqrt(2-2|<a,b>|)
        // loses half the precision near coincident lines
        cplx z = vecops::hdot(b, a);
        cplx ph = std::abs(z) > 1e-14 ? std::conj(z) / std::abs(z) : cplx(1, 0);
        double s = 0;
        for (int i = 0; i < m; ++i) s += std::norm(ph * b[i] - a[i]);
        return std::sqrt(s);
    }

    std::vector<double> params(const element& p) const {
        std::vector<double> out;
        out.reserve(embed_dim());
        vecops::push_interleaved(out, p);
        return out;
    }

    element make(const std::vector<double>& params) const {
        element p(m);
        for (int i = 0; i < m; ++i) p[i] = cplx(params[2 * i], params[2 * i + 1]);
        return canonicalize(std::move(p));
    }

    /// Complex-orthogonal directions w and iw; phase motion along i*u is
    /// excluded, so steps stay transverse to the canonicalization.
    std::vector<std::vector<double>> tangent_basis(const element& u) const {
        auto comp = vecops::complex_complement(u);
        std::vector<std::vector<double>> basis;
        basis.reserve(tangent_dim());
        for (const auto& w : comp) {
            std::vector<double> re, im;
            re.reserve(embed_dim());
            im.reserve(embed_dim());
            for (const cplx& z : w) {
                re.push_back(z.real());
                re.push_back(z.imag());
                im.push_back(-z.imag());
                im.push_back(z.real());
            }
            basis.push_back(std::move(re));
            basis.push_back(std::move(im));
        }
        return basis;
    }

    element random_point(std::mt19937_64& rng) const {
        std::normal_distribution<double> g;
        element p(m);
        for (cplx& z : p) z = cplx(g(rng), g(rng));
        return canonicalize(std::move(p));
    }
};

// ---------------------------------------------------------------------------
// Grassmannians Gr_k(C^m): subspaces as orthonormal frames, compared via
// their projectors.
// ---------------------------------------------------------------------------

/// m x k column-major complex matrix with orthonormal columns.
struct Frame {
    int m = 0, k = 0;
    std::vector<cplx> a;  // column-major

    cplx& at(int i, int j) { return a[static_cast<std::size_t>(j) * m + i]; }
    const cplx& at(int i, int j) const { return a[static_cast<std::size_t>(j) * m + i]; }
};

/// j^q_U applied to an arbitrary vector: identity on span(U), q on the
/// orthogonal complement.
inline std::vector<cplx> grass_reflect(const std::vector<cplx>& v, const Frame& u, cplx q) {
    std::vector<cplx> r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = q * v[i];
    for (int j = 0; j < u.k; ++j) {
        cplx c = 0;
        for (int i = 0; i < u.m; ++i) c += v[i] * std::conj(u.at(i, j));
        for (int i = 0; i < u.m; ++i) r[i] += (1.0 - q) * c * u.at(i, j);
    }
    return r;
}

struct GrassQuandle {
    using element = Frame;
    int m, k;
    double phase;
    cplx q;

    GrassQuandle(int m_, int k_, double phase_)
        : m(m_), k(k_), phase(phase_), q(std::polar(1.0, phase_)) {
        if (m < 1 || k < 1 || k > m) throw input_error("grassmannian needs 1 <= k <= m");
    }

    std::string name() const {
        return "grass:" + std::to_string(m) + ":" + std::to_string(k) +
               ":q=" + std::to_string(phase);
    }

    /// Modified Gram-Schmidt with a second pass; columns must be
    /// independent (drift from retraction steps is far below that).
    static Frame orthonormalize(Frame f) {
        for (int j = 0; j < f.k; ++j) {
            for (int pass = 0; pass < 2; ++pass) {
                for (int p = 0; p < j; ++p) {
                    cplx c = 0;
                    for (int i = 0; i < f.m; ++i) c += f.at(i, j) * std::conj(f.at(i, p));
                    for (int i = 0; i < f.m; ++i) f.at(i, j) -= c * f.at(i, p);
                }
            }
            double n = 0;
            for (int i = 0; i < f.m; ++i) n += std::norm(f.at(i, j));
            n = std::sqrt(n);
            if (n < 1e-10) throw input_error("frame columns are not independent");
            for (int i = 0; i < f.m; ++i) f.at(i, j) /= n;
        }
        return f;
    }

    element apply(const element& u, const element& w, cplx qq) const {
        Frame r = u;
        for (int j = 0; j < k; ++j) {
            std::vector<cplx> col(m);
            for (int i = 0; i < m; ++i) col[i] = u.at(i, j);
            auto mapped = grass_reflect(col, w, qq);
            for (int i = 0; i < m; ++i) r.at(i, j) = mapped[i];
        }
        return orthonormalize(std::move(r));
    }

    element op(const element& u, const element& w) const { return apply(u, w, q); }
    element inv_op(const element& u, const element& w) const {
        return apply(u, w, std::conj(q));
    }

    std::size_t embed_dim() const { return 2 * static_cast<std::size_t>(m) * m; }
    std::size_t param_dim() const { return 2 * static_cast<std::size_t>(m) * k; }
    std::size_t tangent_dim() const {
        return 2 * static_cast<std::size_t>(k) * (static_cast<std::size_t>(m) - k);
    }

    /// Projector F F^H flattened; frame-gauge independent.
    std::vector<cplx> projector(const element& f) const {
        std::vector<cplx> p(static_cast<std::size_t>(m) * m, cplx(0, 0));
        for (int j = 0; j < k; ++j)
            for (int r = 0; r < m; ++r)
                for (int c = 0; c < m; ++c)
                    p[static_cast<std::size_t>(r) * m + c] += f.at(r, j) * std::conj(f.at(c, j));
        return p;
    }

    void diff(const element& base, const element& p, double* out) const {
        auto pb = projector(base), pp = projector(p);
        for (std::size_t i = 0; i < pb.size(); ++i) {
            cplx z = pp[i] - pb[i];
            out[2 * i] = z.real();
            out[2 * i + 1] = z.imag();
        }
    }

    double dist(const element& a, const element& b) const {
        auto pa = projector(a), pb = projector(b);
        double s = 0;
        for (std::size_t i = 0; i < pa.size(); ++i) s += std::norm(pa[i] - pb[i]);
        return std::sqrt(s);
    }

    std::vector<double> params(const element& f) const {
        std::vector<double> out;
        out.reserve(param_dim());
        vecops::push_interleaved(out, f.a);
        return out;
    }

    element make(const std::vector<double>& params) const {
        Frame f;
        f.m = m;
        f.k = k;
        f.a.resize(static_cast<std::size_t>(m) * k);
        for (std::size_t i = 0; i < f.a.size(); ++i)
            f.a[i] = cplx(params[2 * i], params[2 * i + 1]);
        return orthonormalize(std::move(f));
    }

    /// Horizontal directions F_perp e_r e_s^T (and i times them).
    std::vector<std::vector<double>> tangent_basis(const element& f) const {
        // Orthonormal basis of the complement of span(f).
        std::vector<std::vector<cplx>> perp;
        std::vector<std::vector<cplx>> cols;
        for (int j = 0; j < k; ++j) {
            std::vector<cplx> c(m);
            for (int i = 0; i < m; ++i) c[i] = f.at(i, j);
            cols.push_back(std::move(c));
        }
        for (int e = 0; e < m && static_cast<int>(perp.size()) < m - k; ++e) {
            std::vector<cplx> v(m, cplx(0, 0));
            v[e] = 1.0;
            for (int pass = 0; pass < 2; ++pass) {
                for (const auto& c : cols) {
                    cplx z = 0;
                    for (int i = 0; i < m; ++i) z += v[i] * std::conj(c[i]);
                    for (int i = 0; i < m; ++i) v[i] -= z * c[i];
                }
                for (const auto& c : perp) {
                    cplx z = 0;
                    for (int i = 0; i < m; ++i) z += v[i] * std::conj(c[i]);
                    for (int i = 0; i < m; ++i) v[i] -= z * c[i];
                }
            }
            double n = 0;
            for (const cplx& z : v) n += std::norm(z);
            n = std::sqrt(n);
            if (n < 1e-6) continue;
            for (cplx& z : v) z /= n;
            perp.push_back(std::move(v));
        }
        std::vector<std::vector<double>> basis;
        basis.reserve(tangent_dim());
        for (const auto& dir : perp)
            for (int s = 0; s < k; ++s)
                for (int im = 0; im < 2; ++im) {
                    std::vector<double> t(param_dim(), 0.0);
                    for (int i = 0; i < m; ++i) {
                        cplx z = im ? cplx(0, 1) * dir[i] : dir[i];
                        std::size_t idx = 2 * (static_cast<std::size_t>(s) * m + i);
                        t[idx] = z.real();
                        t[idx + 1] = z.imag();
                    }
                    basis.push_back(std::move(t));
                }
        return basis;
    }

    element random_point(std::mt19937_64& rng) const {
        std::normal_distribution<double> g;
        Frame f;
        f.m = m;
        f.k = k;
        f.a.resize(static_cast<std::size_t>(m) * k);
        for (cplx& z : f.a) z = cplx(g(rng), g(rng));
        return orthonormalize(std::move(f));
    }
};

// ---------------------------------------------------------------------------
// The conjugacy class of (1 0; 1 1) in SL(2,C), modelled on pairs
// (a,b) in C^2 - {0} modulo sign, with
//   [a,b]*[c,d] = [a - acd + bc^2, b - ad^2 + bcd].
// ---------------------------------------------------------------------------

using SL2Elem = std::array<cplx, 2>;
using Mat2 = std::array<cplx, 4>;  // row-major

/// The unipotent matrix (1-ab, -b^2; a^2, 1+ab) represented by [a,b].
inline Mat2 sl2_to_matrix(const SL2Elem& u) {
    cplx a = u[0], b = u[1];
    return {1.0 - a * b, -b * b, a * a, 1.0 + a * b};
}

inline Mat2 mat_mul(const Mat2& x, const Mat2& y) {
    return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
            x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]};
}

/// Inverse of a determinant-1 matrix (the adjugate).
inline Mat2 mat_inv_det1(const Mat2& x) { return {x[3], -x[1], -x[2], x[0]}; }

/// Canonical representative modulo sign: the coordinate of larger
/// modulus gets nonnegative real part, ties broken by imaginary part.
inline SL2Elem sl2_canonicalize(SL2Elem u) {
    const cplx& w = std::abs(u[1]) > std::abs(u[0]) ? u[1] : u[0];
    bool flip = w.real() < 0 || (w.real() == 0 && w.imag() < 0);
    if (flip) {
        u[0] = -u[0];
        u[1] = -u[1];
    }
    return u;
}

/// Recovers [a,b] from a matrix in the class, branch chosen for stability.
inline SL2Elem matrix_to_sl2(const Mat2& x) {
    cplx a, b;
    if (std::abs(x[2]) >= std::abs(x[1])) {
        a = std::sqrt(x[2]);
        if (std::abs(a) < 1e-150) throw input_error("matrix is not in the unipotent class");
        b = (1.0 - x[0]) / a;
    } else {
        b = std::sqrt(-x[1]);
        a = (x[3] - 1.0) / b;
    }
    return sl2_canonicalize({a, b});
}

struct SL2Quandle {
    using element = SL2Elem;
    double ball_radius;

    explicit SL2Quandle(double ball_radius_ = 3.0) : ball_radius(ball_radius_) {
        if (ball_radius <= 0) throw input_error("sampling ball radius must be positive");
    }

    std::string name() const { return "sl2"; }

    element op(const element& x, const element& y) const {
        cplx a = x[0], b = x[1], c = y[0], d = y[1];
        return sl2_canonicalize({a - a * c * d + b * c * c, b - a * d * d + b * c * d});
    }

    /// Inverse translation via the matrix picture: x = y (x*y) y^-1.
    element inv_op(const element& u, const element& y) const {
        Mat2 my = sl2_to_matrix(y);
        Mat2 x = mat_mul(mat_mul(my, sl2_to_matrix(u)), mat_inv_det1(my));
        return matrix_to_sl2(x);
    }

    std::size_t embed_dim() const { return 4; }
    std::size_t param_dim() const { return 4; }
    std::size_t tangent_dim() const { return 4; }

    void diff(const element& base, const element& p, double* out) const {
        double dplus = std::norm(p[0] - base[0]) + std::norm(p[1] - base[1]);
        double dminus = std::norm(p[0] + base[0]) + std::norm(p[1] + base[1]);
        double s = dplus <= dminus ? 1.0 : -1.0;
        cplx z0 = s * p[0] - base[0], z1 = s * p[1] - base[1];
        out[0] = z0.real();
        out[1] = z0.imag();
        out[2] = z1.real();
        out[3] = z1.imag();
    }

    double dist(const element& a, const element& b) const {
        double dplus = std::norm(a[0] - b[0]) + std::norm(a[1] - b[1]);
        double dminus = std::norm(a[0] + b[0]) + std::norm(a[1] + b[1]);
        return std::sqrt(std::min(dplus, dminus));
    }

    std::vector<double> params(const element& p) const {
        return {p[0].real(), p[0].imag(), p[1].real(), p[1].imag()};
    }

    element make(const std::vector<double>& params) const {
        SL2Elem u{cplx(params[0], params[1]), cplx(params[2], params[3])};
        if (std::norm(u[0]) + std::norm(u[1]) < 1e-16)
            throw input_error("sl2 point must be nonzero");
        return sl2_canonicalize(u);
    }

    std::vector<std::vector<double>> tangent_basis(const element&) const {
        std::vector<std::vector<double>> basis(4, std::vector<double>(4, 0.0));
        for (int i = 0; i < 4; ++i) basis[i][i] = 1.0;
        return basis;
    }

    /// Retained solutions must stay inside the sampling ball; the
    /// invariant-variety is noncompact and distances between its pieces
    /// degrade with the norm.
    bool in_domain(const element& e) const {
        return std::sqrt(std::norm(e[0]) + std::norm(e[1])) <= ball_radius;
    }

    /// Random point in the sampling ball. Directions are uniform; norms
    /// are log-normal, clipped to the ball, so samples concentrate where
    /// the canonical coordinates are order one.
    element random_point(std::mt19937_64& rng) const {
        std::normal_distribution<double> g;
        std::array<double, 4> v;
        double n2 = 0;
        do {
            n2 = 0;
            for (double& x : v) {
                x = g(rng);
                n2 += x * x;
            }
        } while (n2 < 1e-12);
        double inv = 1.0 / std::sqrt(n2);
        double r = std::exp(0.6 * g(rng));
        r = std::min(r, ball_radius);
        r = std::max(r, 0.05);
        return sl2_canonicalize(
            {cplx(v[0], v[1]) * (inv * r), cplx(v[2], v[3]) * (inv * r)});
    }
};

}  // namespace qlink
