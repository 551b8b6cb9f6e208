#pragma once

// Numerical determination of the fixed-point variety of a braid acting
// on a product of continuous quandles: random-restart damped Gauss-Newton
// refinement, single-linkage clustering of the retained solutions, and
// local-PCA dimension estimates per connected component.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <limits>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qlink/braid.hpp"
#include "qlink/geom.hpp"
#include "qlink/parallel.hpp"

namespace qlink {

struct SolveConfig {
    int restarts = 5000;
    double refine_tol = 1e-10;
    int max_iters = 200;
    // Linking radius: far below the smallest inter-component gap of the
    // sphere fixed-point varieties (>= 1.17) and comfortably above the
    // sample spacing at the default restart count.
    double cluster_eps = 0.7;
    double dim_svd_threshold = 0.1;
    std::uint64_t seed = 0;
    int diagonal_starts = -1;      // -1: max(100, restarts/10)
    int max_analysis_points = 20000;
    double fd_step = 1e-6;
    // Cutoff applied to PCA variances (squared singular values); see the
    // spectrum field of the report for the raw profile.
    bool variance_cutoff = true;

    int effective_diagonal_starts() const {
        return diagonal_starts >= 0 ? diagonal_starts : std::max(100, restarts / 10);
    }

    void validate() const {
        if (restarts < 0 || max_iters <= 0 || refine_tol <= 0 || cluster_eps <= 0 ||
            dim_svd_threshold <= 0 || fd_step <= 0)
            throw input_error("solver configuration values must be positive");
        if (cluster_eps < refine_tol * 1e6)
            throw input_error("cluster_eps must exceed refine_tol by >= 6 orders of magnitude");
    }

    json to_json() const {
        json j;
        j["restarts"] = restarts;
        j["diagonal_starts"] = effective_diagonal_starts();
        j["refine_tol"] = refine_tol;
        j["max_iters"] = max_iters;
        j["cluster_eps"] = cluster_eps;
        j["dim_svd_threshold"] = dim_svd_threshold;
        j["max_analysis_points"] = max_analysis_points;
        j["seed"] = seed;
        return j;
    }
};

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

template <class Q>
using Tuple = std::vector<typename Q::element>;

/// Slot-wise aligned difference act(word,x) - x, written to out
/// (length strands * embed_dim).
template <QuandleOps Q>
void residual_vec(const BraidWord& w, const Tuple<Q>& x, const Q& q, double* out) {
    Tuple<Q> y = x;
    for (int e : w.letters) apply_letter(e, y, q);
    const std::size_t ed = q.embed_dim();
    for (std::size_t j = 0; j < x.size(); ++j) q.diff(x[j], y[j], out + j * ed);
}

/// Norm of the fixed-point defect in the ambient product metric.
template <QuandleOps Q>
double residual(const BraidWord& w, const Tuple<Q>& x, const Q& q) {
    std::vector<double> buf(x.size() * q.embed_dim());
    residual_vec(w, x, q, buf.data());
    double s = 0;
    for (double v : buf) s += v * v;
    return std::sqrt(s);
}

/// Distance between tuples in the ambient product metric.
template <QuandleOps Q>
double tuple_dist(const Tuple<Q>& a, const Tuple<Q>& b, const Q& q) {
    double s = 0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        double d = q.dist(a[j], b[j]);
        s += d * d;
    }
    return std::sqrt(s);
}

template <class Q>
struct RefineOutcome {
    Tuple<Q> x;
    double residual = std::numeric_limits<double>::infinity();
    int iters = 0;
    bool converged = false;
};

/// Damped Gauss-Newton on the product manifold. The Jacobian of the
/// residual is taken by central finite differences in tangent-space
/// coordinates; steps are retracted slot-wise (renormalization,
/// re-orthonormalization or canonicalization, depending on the quandle).
template <QuandleOps Q>
RefineOutcome<Q> refine(const BraidWord& w, Tuple<Q> x, const Q& q, const SolveConfig& cfg) {
    const int n = w.strands;
    const std::size_t ed = q.embed_dim(), td = q.tangent_dim();
    const std::size_t rows = n * ed, cols = n * td;

    Eigen::VectorXd r(rows), rp(rows), rm(rows), rtrial(rows);
    Eigen::MatrixXd J(rows, cols);
    auto eval = [&](const Tuple<Q>& xx, Eigen::VectorXd& out) {
        residual_vec(w, xx, q, out.data());
        return out.norm();
    };

    double rn = eval(x, r);
    double lambda = 1e-3;
    const double h = cfg.fd_step;
    int iter = 0;
    std::vector<std::vector<std::vector<double>>> bases(n);
    Tuple<Q> xvar, xtrial;

    for (; iter < cfg.max_iters && rn >= cfg.refine_tol; ++iter) {
        for (int j = 0; j < n; ++j) bases[j] = q.tangent_basis(x[j]);
        std::size_t col = 0;
        bool jac_ok = true;
        for (int j = 0; j < n && jac_ok; ++j) {
            auto base_params = q.params(x[j]);
            for (std::size_t k = 0; k < td; ++k, ++col) {
                auto step = [&](double sgn, Eigen::VectorXd& out) {
                    auto p = base_params;
                    for (std::size_t i = 0; i < p.size(); ++i) p[i] += sgn * h * bases[j][k][i];
                    xvar = x;
                    xvar[j] = q.make(p);
                    eval(xvar, out);
                };
                try {
                    step(+1.0, rp);
                    step(-1.0, rm);
                } catch (const input_error&) {
                    jac_ok = false;
                    break;
                }
                J.col(col) = (rp - rm) / (2.0 * h);
            }
        }
        if (!jac_ok) break;

        Eigen::MatrixXd JtJ = J.transpose() * J;
        Eigen::VectorXd Jtr = J.transpose() * r;
        bool accepted = false;
        for (int tries = 0; tries < 12 && !accepted; ++tries) {
            Eigen::MatrixXd A = JtJ;
            A.diagonal().array() += lambda;
            Eigen::VectorXd delta = A.ldlt().solve(-Jtr);
            bool ok = true;
            xtrial = x;
            std::size_t c = 0;
            try {
                for (int j = 0; j < n; ++j) {
                    auto p = q.params(x[j]);
                    for (std::size_t k = 0; k < td; ++k, ++c)
                        for (std::size_t i = 0; i < p.size(); ++i)
                            p[i] += delta[c] * bases[j][k][i];
                    xtrial[j] = q.make(p);
                }
            } catch (const input_error&) {
                ok = false;
            }
            double rt = ok ? eval(xtrial, rtrial) : std::numeric_limits<double>::infinity();
            if (rt < rn) {
                x.swap(xtrial);
                rn = rt;
                r.swap(rtrial);
                lambda = std::max(lambda / 3.0, 1e-14);
                accepted = true;
            } else {
                lambda = std::min(lambda * 10.0, 1e12);
            }
        }
        if (!accepted) break;
    }
    return {std::move(x), rn, iter, rn < cfg.refine_tol};
}

/// Refined samples of the fixed-point variety. Points keep the index of
/// the restart that produced them, so output is reproducible regardless
/// of the worker count.
template <class Q>
struct Cloud {
    BraidWord word;
    std::string quandle;
    std::vector<Tuple<Q>> points;
    std::vector<double> residuals;
    std::vector<std::size_t> start_index;
    std::size_t attempts = 0;
    std::size_t failures = 0;
    std::size_t out_of_domain = 0;
};

namespace detail {

template <class Q, class E = typename Q::element>
bool in_domain(const Q& q, const E& e) {
    if constexpr (requires { q.in_domain(e); })
        return q.in_domain(e);
    else
        return true;
}

}  // namespace detail

/// Random-restart sampling: `restarts` random tuples plus a block of
/// diagonal starts (a,...,a), every result refined and kept when the
/// residual bound is met. Deterministic given the seed: restart i uses
/// its own generator derived from (seed, i).
template <QuandleOps Q>
Cloud<Q> sample_solutions(const BraidWord& w, const Q& q, const SolveConfig& cfg) {
    cfg.validate();
    const int n = w.strands;
    const std::size_t total =
        static_cast<std::size_t>(cfg.restarts) + cfg.effective_diagonal_starts();

    struct Slot {
        bool kept = false;
        bool failed = false;
        bool outside = false;
        Tuple<Q> x;
        double res = 0;
    };
    std::vector<Slot> slots(total);

    parallel_for(total, [&](std::size_t i) {
        std::mt19937_64 rng(splitmix64(cfg.seed ^ splitmix64(i + 1)));
        Tuple<Q> x0;
        x0.reserve(n);
        if (i < static_cast<std::size_t>(cfg.restarts)) {
            for (int j = 0; j < n; ++j) x0.push_back(q.random_point(rng));
        } else {
            auto a = q.random_point(rng);
            for (int j = 0; j < n; ++j) x0.push_back(a);
        }
        auto out = refine(w, std::move(x0), q, cfg);
        Slot& s = slots[i];
        if (!out.converged) {
            s.failed = true;
            return;
        }
        for (const auto& e : out.x)
            if (!detail::in_domain(q, e)) {
                s.outside = true;
                return;
            }
        s.kept = true;
        s.x = std::move(out.x);
        s.res = out.residual;
    });

    Cloud<Q> cloud;
    cloud.word = w;
    cloud.quandle = q.name();
    cloud.attempts = total;
    for (std::size_t i = 0; i < total; ++i) {
        Slot& s = slots[i];
        if (s.kept) {
            cloud.points.push_back(std::move(s.x));
            cloud.residuals.push_back(s.res);
            cloud.start_index.push_back(i);
        } else if (s.outside) {
            ++cloud.out_of_domain;
        } else {
            ++cloud.failures;
        }
    }
    return cloud;
}

// ---------------------------------------------------------------------------
// Component and dimension analysis of a cloud.
// ---------------------------------------------------------------------------

/// The one-parameter family of partners solving the trefoil equation
/// with a given g = [a,b]: h = [alpha a - bt, alpha b + at], where
/// at = conj(a)/(|a|^2+|b|^2) and bt likewise.
inline SL2Elem sl2_solution_family(const SL2Elem& g, cplx alpha) {
    double nrm = std::norm(g[0]) + std::norm(g[1]);
    if (nrm < 1e-16) throw input_error("sl2 point must be nonzero");
    cplx at = std::conj(g[0]) / nrm, bt = std::conj(g[1]) / nrm;
    return sl2_canonicalize({alpha * g[0] - bt, alpha * g[1] + at});
}

/// Distance from (g,h) to the family {(g, sl2_solution_family(g,alpha))},
/// minimized over alpha in closed form (least squares, both signs of h).
inline double sl2_family_residual(const SL2Elem& g, const SL2Elem& h) {
    double nrm = std::norm(g[0]) + std::norm(g[1]);
    cplx w0 = -std::conj(g[1]) / nrm, w1 = std::conj(g[0]) / nrm;
    double best = std::numeric_limits<double>::infinity();
    for (double s : {1.0, -1.0}) {
        cplx r0 = s * h[0] - w0, r1 = s * h[1] - w1;
        cplx alpha = (r0 * std::conj(g[0]) + r1 * std::conj(g[1])) / nrm;
        double res = std::sqrt(std::norm(r0 - alpha * g[0]) + std::norm(r1 - alpha * g[1]));
        best = std::min(best, res);
    }
    return best;
}

/// Distance from (g,h) to the diagonal {(x,x)}.
inline double sl2_diagonal_residual(const SL2Elem& g, const SL2Elem& h) {
    SL2Quandle q;
    return q.dist(g, h) / std::sqrt(2.0);
}

struct ComponentInfo {
    std::size_t size = 0;
    int dim = 0;
    std::vector<double> spectrum;  // mean normalized singular values
};

struct CloudAnalysis {
    std::vector<std::size_t> indices;  // analyzed subset, indices into the cloud
    std::vector<int> labels;           // component label per analyzed point
    std::vector<ComponentInfo> components;
    int component_count = 0;
};

namespace detail {

/// Local-PCA dimension per labelled component: for each base point,
/// PCA over its k nearest in-component neighbours (k = 4 x ambient
/// product dimension, capped by the component size), counting spectral
/// values above the relative cutoff; per-component dimension is the
/// majority over base points (ties toward the smaller dimension). Base
/// points are subsampled when a component is large; every member still
/// serves as a potential neighbour.
template <QuandleOps Q>
std::vector<ComponentInfo> component_dims(const Cloud<Q>& cloud, const Q& q,
                                          const SolveConfig& cfg,
                                          const std::vector<std::size_t>& indices,
                                          const std::vector<int>& labels, int ncomp) {
    std::vector<ComponentInfo> comps(ncomp);
    const std::size_t N = indices.size();
    for (int l : labels) ++comps[l].size;

    const int n = cloud.word.strands;
    const std::size_t ed = q.embed_dim();
    const std::size_t ambient = n * ed;
    const std::size_t k_target = 4 * ambient;
    constexpr std::size_t kBaseCap = 3000;

    std::vector<std::vector<std::size_t>> members(ncomp);
    for (std::size_t i = 0; i < N; ++i) members[labels[i]].push_back(i);

    std::vector<int> point_dim(N, -1);
    std::vector<std::vector<double>> point_spec(N);
    std::vector<std::size_t> bases;
    for (int l = 0; l < ncomp; ++l) {
        std::size_t stride = std::max<std::size_t>(1, members[l].size() / kBaseCap);
        for (std::size_t mi = 0; mi < members[l].size(); mi += stride)
            bases.push_back(members[l][mi]);
    }

    parallel_for(bases.size(), [&](std::size_t bi) {
        std::size_t i = bases[bi];
        const auto& pool = members[labels[i]];
        std::size_t k = std::min(k_target, pool.size() - 1);
        if (k < 2) {
            point_dim[i] = 0;
            return;
        }
        std::vector<std::pair<double, std::size_t>> near;
        near.reserve(pool.size());
        for (std::size_t j : pool)
            if (j != i)
                near.emplace_back(
                    tuple_dist(cloud.points[indices[i]], cloud.points[indices[j]], q), j);
        std::partial_sort(near.begin(), near.begin() + k, near.end());
        Eigen::MatrixXd A(k, ambient);
        std::vector<double> row(ambient);
        const auto& base = cloud.points[indices[i]];
        for (std::size_t r = 0; r < k; ++r) {
            const auto& p = cloud.points[indices[near[r].second]];
            for (int s = 0; s < n; ++s) q.diff(base[s], p[s], row.data() + s * ed);
            for (std::size_t c = 0; c < ambient; ++c) A(r, c) = row[c];
        }
        Eigen::RowVectorXd mean = A.colwise().mean();
        A.rowwise() -= mean;
        Eigen::MatrixXd cov = A.transpose() * A / static_cast<double>(k);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
        Eigen::VectorXd ev = eig.eigenvalues().reverse();  // descending variances
        double top = ev[0];
        // a neighbourhood whose spread is at solver precision is a point
        if (top <= 1e-18) {
            point_dim[i] = 0;
            return;
        }
        int d = 0;
        std::vector<double> spec;
        for (int c = 0; c < ev.size(); ++c) {
            double lam = std::max(ev[c], 0.0);
            double rel = cfg.variance_cutoff ? lam / top : std::sqrt(lam / top);
            spec.push_back(std::sqrt(lam / top));
            if (rel > cfg.dim_svd_threshold) ++d;
        }
        point_dim[i] = d;
        point_spec[i] = std::move(spec);
    });

    for (int l = 0; l < ncomp; ++l) {
        std::map<int, std::size_t> votes;
        std::vector<double> spec;
        std::size_t spec_n = 0;
        for (std::size_t i : members[l]) {
            if (point_dim[i] < 0) continue;
            ++votes[point_dim[i]];
            if (!point_spec[i].empty()) {
                if (spec.size() < point_spec[i].size()) spec.resize(point_spec[i].size(), 0.0);
                for (std::size_t c = 0; c < point_spec[i].size(); ++c) spec[c] += point_spec[i][c];
                ++spec_n;
            }
        }
        int best = 0;
        std::size_t best_votes = 0;
        for (auto& [d, v] : votes)
            if (v > best_votes || (v == best_votes && d < best)) {
                best = d;
                best_votes = v;
            }
        comps[l].dim = best;
        if (spec_n > 0) {
            for (double& v : spec) v /= static_cast<double>(spec_n);
            comps[l].spectrum = std::move(spec);
        }
    }
    return comps;
}

}  // namespace detail

/// Single-linkage components of the cluster_eps-graph plus the
/// per-component local-PCA dimension estimate. Components are ordered
/// by size, largest first. When the cloud is very large a deterministic
/// stride subsample is analyzed.
template <QuandleOps Q>
CloudAnalysis analyze_cloud(const Cloud<Q>& cloud, const Q& q, const SolveConfig& cfg) {
    CloudAnalysis an;
    const std::size_t total = cloud.points.size();
    if (total == 0) return an;

    std::size_t stride = 1;
    if (cfg.max_analysis_points > 0 &&
        total > static_cast<std::size_t>(cfg.max_analysis_points))
        stride = (total + cfg.max_analysis_points - 1) / cfg.max_analysis_points;
    for (std::size_t i = 0; i < total; i += stride) an.indices.push_back(i);
    const std::size_t N = an.indices.size();

    auto dist_ij = [&](std::size_t i, std::size_t j) {
        return tuple_dist(cloud.points[an.indices[i]], cloud.points[an.indices[j]], q);
    };

    // Union-find over the eps-graph.
    std::vector<std::size_t> parent(N);
    for (std::size_t i = 0; i < N; ++i) parent[i] = i;
    auto find = [&](std::size_t i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = i + 1; j < N; ++j) {
            std::size_t ri = find(i), rj = find(j);
            if (ri == rj) continue;
            if (dist_ij(i, j) <= cfg.cluster_eps) parent[ri] = rj;
        }

    // Compact labels ordered by component size (ties: smallest member).
    std::vector<int> rawlabel(N);
    std::vector<std::size_t> roots;
    for (std::size_t i = 0; i < N; ++i) {
        std::size_t r = find(i);
        auto it = std::find(roots.begin(), roots.end(), r);
        if (it == roots.end()) {
            roots.push_back(r);
            rawlabel[i] = static_cast<int>(roots.size()) - 1;
        } else {
            rawlabel[i] = static_cast<int>(it - roots.begin());
        }
    }
    std::vector<std::size_t> compsize(roots.size(), 0);
    for (int l : rawlabel) ++compsize[l];
    std::vector<int> order(roots.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (compsize[a] != compsize[b]) return compsize[a] > compsize[b];
        return a < b;
    });
    std::vector<int> remap(roots.size());
    for (std::size_t pos = 0; pos < order.size(); ++pos) remap[order[pos]] = static_cast<int>(pos);
    an.labels.resize(N);
    for (std::size_t i = 0; i < N; ++i) an.labels[i] = remap[rawlabel[i]];
    an.component_count = static_cast<int>(roots.size());
    an.components = detail::component_dims(cloud, q, cfg, an.indices, an.labels,
                                           an.component_count);
    return an;
}

/// Verification split for the trefoil cloud over the SL(2,C) class
/// quandle. The solution variety is the union of two connected families
/// (the diagonal, and the one-parameter partners around each base
/// point); every retained point is attributed to one of them by its
/// closed-form residual. Component count and dimensions follow from the
/// classification, which stays well-posed where the ambient eps-graph
/// does not (the family is a noncompact 6-manifold; see README).
struct SL2TrefoilSplit {
    std::size_t diagonal_count = 0;
    std::size_t family_count = 0;
    std::size_t ambiguous = 0;
    std::size_t unclassified = 0;
    double max_residual_to_own = 0;    // worst classified-point residual
    double min_residual_to_other = 0;  // separation between the families
    std::vector<ComponentInfo> components;  // [diagonal, family]
};

inline SL2TrefoilSplit analyze_sl2_trefoil(const Cloud<SL2Quandle>& cloud,
                                           const SL2Quandle& q, const SolveConfig& cfg,
                                           double class_tol = 1e-6) {
    SL2TrefoilSplit split;
    split.min_residual_to_other = std::numeric_limits<double>::infinity();
    const std::size_t N = cloud.points.size();
    std::vector<std::size_t> indices;
    std::vector<int> labels;
    indices.reserve(N);
    labels.reserve(N);
    for (std::size_t i = 0; i < N; ++i) {
        const auto& p = cloud.points[i];
        double rd = sl2_diagonal_residual(p[0], p[1]);
        double rf = sl2_family_residual(p[0], p[1]);
        bool isd = rd < class_tol, isf = rf < class_tol;
        if (isd && isf) {
            ++split.ambiguous;
            continue;
        }
        if (!isd && !isf) {
            ++split.unclassified;
            continue;
        }
        split.max_residual_to_own = std::max(split.max_residual_to_own, std::min(rd, rf));
        split.min_residual_to_other = std::min(split.min_residual_to_other, std::max(rd, rf));
        indices.push_back(i);
        labels.push_back(isd ? 0 : 1);
        if (isd)
            ++split.diagonal_count;
        else
            ++split.family_count;
    }
    split.components = detail::component_dims(cloud, q, cfg, indices, labels, 2);
    return split;
}

/// JSON report: component count, dimension multiset, per-component
/// detail, residual statistics and the exact configuration used.
template <QuandleOps Q>
json solver_report(const Cloud<Q>& cloud, const CloudAnalysis& an, const Q& q,
                   const SolveConfig& cfg) {
    json j;
    j["word"] = print_braid(cloud.word);
    j["quandle"] = q.name();
    j["seed"] = cfg.seed;
    j["attempts"] = cloud.attempts;
    j["samples"] = cloud.points.size();
    j["failures"] = cloud.failures;
    j["out_of_domain"] = cloud.out_of_domain;
    if (cloud.points.empty()) {
        j["components"] = 0;
        j["warning"] = "no solutions retained";
    } else {
        j["components"] = an.component_count;
        std::vector<int> dims;
        for (const auto& c : an.components) dims.push_back(c.dim);
        std::sort(dims.begin(), dims.end());
        j["dims"] = dims;
        json detail = json::array();
        for (const auto& c : an.components) {
            json cd;
            cd["size"] = c.size;
            cd["dim"] = c.dim;
            json spec = json::array();
            for (double v : c.spectrum) spec.push_back(v);
            cd["spectrum"] = std::move(spec);
            detail.push_back(std::move(cd));
        }
        j["components_detail"] = std::move(detail);
        double rmax = 0, rsum = 0;
        for (double r : cloud.residuals) {
            rmax = std::max(rmax, r);
            rsum += r;
        }
        j["residual_max"] = rmax;
        j["residual_mean"] = rsum / static_cast<double>(cloud.residuals.size());
        j["analyzed_points"] = an.indices.size();
    }
    j["config"] = cfg.to_json();
    return j;
}

/// Refined cloud as CSV, one row per point, slot coordinates flattened.
template <QuandleOps Q>
void write_points_csv(std::ostream& os, const Cloud<Q>& cloud, const Q& q) {
    os << std::setprecision(17);
    for (std::size_t i = 0; i < cloud.points.size(); ++i) {
        bool first = true;
        for (const auto& slot : cloud.points[i])
            for (double v : q.params(slot)) {
                if (!first) os << ',';
                os << v;
                first = false;
            }
        os << '\n';
    }
}

// ---------------------------------------------------------------------------
// Closed-form oracles used to cross-check the refined solutions.
// ---------------------------------------------------------------------------

enum class CircleFamily { trefoil, figure_eight };

/// Roots of the great-circle angle equations for the two closed-form
/// systems, found by 1-D scanning of the sphere-op equations on the
/// circle through a and b (independent of the Gauss-Newton path).
/// Trefoil: angles of a measured from b; figure-eight: angles of b
/// measured from a. Angles are reported in (-pi, pi].
inline std::vector<double> great_circle_oracle(CircleFamily family,
                                               const std::vector<double>& a,
                                               const std::vector<double>& b) {
    if (a.size() != b.size() || a.size() < 3)
        throw input_error("great-circle oracle needs two points on S^d, d >= 2");
    SphereQuandle q(static_cast<int>(a.size()) - 1);
    if (q.dist(a, b) < 1e-6) throw input_error("great-circle oracle needs b != a");
    std::vector<double> minus_a(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) minus_a[i] = -a[i];
    if (q.dist(minus_a, b) < 1e-6) throw input_error("great-circle oracle needs b != -a");

    const std::vector<double>& u = family == CircleFamily::trefoil ? b : a;
    const std::vector<double>& other = family == CircleFamily::trefoil ? a : b;
    std::vector<double> v(u.size());
    double c = vecops::dot(other, u);
    for (std::size_t i = 0; i < u.size(); ++i) v[i] = other[i] - c * u[i];
    vecops::normalize(v);

    auto point_at = [&](double theta) {
        std::vector<double> p(u.size());
        double ct = std::cos(theta), st = std::sin(theta);
        for (std::size_t i = 0; i < u.size(); ++i) p[i] = ct * u[i] + st * v[i];
        return p;
    };
    auto defect = [&](double theta) {
        auto p = point_at(theta);
        if (family == CircleFamily::trefoil) {
            // p plays the role of a; u is b: b*(a*b) = a, (a*b)*a = b.
            auto ab = q.op(p, u);
            return std::max(q.dist(q.op(u, ab), p), q.dist(q.op(ab, p), u));
        }
        // p plays the role of b; u is a:
        // b*(a*(b*a)) = a, (a*(b*a))*b = b*a.
        auto ba = q.op(p, u);
        auto s = q.op(u, ba);
        return std::max(q.dist(q.op(p, s), u), q.dist(q.op(s, p), ba));
    };

    const int grid = 20000;
    std::vector<double> g(grid);
    for (int i = 0; i < grid; ++i)
        g[i] = defect(-M_PI + (2.0 * M_PI * i) / grid);
    std::vector<double> roots;
    for (int i = 0; i < grid; ++i) {
        double prev = g[(i + grid - 1) % grid], next = g[(i + 1) % grid];
        if (g[i] > prev || g[i] > next || g[i] > 0.1) continue;
        double lo = -M_PI + (2.0 * M_PI * (i - 1)) / grid;
        double hi = -M_PI + (2.0 * M_PI * (i + 1)) / grid;
        for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
            double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
            if (defect(m1) <= defect(m2))
                hi = m2;
            else
                lo = m1;
        }
        double theta = 0.5 * (lo + hi);
        if (defect(theta) > 1e-8) continue;
        if (theta <= -M_PI) theta += 2.0 * M_PI;
        if (theta > M_PI) theta -= 2.0 * M_PI;
        bool dup = false;
        for (double r : roots) {
            double d = std::abs(r - theta);
            d = std::min(d, 2.0 * M_PI - d);
            if (d < 1e-5) dup = true;
        }
        if (!dup) roots.push_back(theta);
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

}  // namespace qlink
