#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "ahlfors/common.hpp"
#include "ahlfors/summation.hpp"

namespace ahlfors {

// ---------------------------------------------------------------------------
// Configuration types
// ---------------------------------------------------------------------------

/// Scaled Gaussian lattice c*(Z + Zi). The generator ratio is fixed to i:
/// the symmetry i*Gamma == Gamma is load-bearing for the reciprocal-sum
/// cancellations, so no other lattice is supported.
struct LatticeConfig {
    int c = 5;

    cplx tau() const { return {0.0, 1.0}; }

    void validate() const {
        if (c < 5)
            throw std::invalid_argument("LatticeConfig: c must be >= 5 (point separation c - sqrt(2) > 2)");
    }
};

enum class GrowthLaw { multiplicative, power };

/// Annulus radii r_1 < r_2 < ... with their growth law. The desk-scale default
/// is multiplicative (r_{i+1} = 4 r_i, r_1 = 8c); the original power law
/// (r_1 = 2020c, r_{i+1} = r_i^4) is available but infeasible past i = 1.
/// Tail bounds for unbuilt annuli always continue with the power law, since the
/// Taylor-regime admissibility r_l/3 > 3|z| needs genuinely rapid growth.
struct RadiiSchedule {
    std::vector<double> radii;
    GrowthLaw law = GrowthLaw::multiplicative;
    double growth = 4.0;           // factor (multiplicative) or exponent (power)
    double base_multiplier = 8.0;  // requires r_1 >= base_multiplier * c
    double tail_exponent = 4.0;    // continuation law for omitted annuli

    size_t count() const { return radii.size(); }
    bool empty() const { return radii.empty(); }
    double radius(int i) const { return radii.at(static_cast<size_t>(i) - 1); }  // 1-based

    // Radius of annulus ell (1-based), extending past the built prefix with the
    // tail power law. Saturates instead of overflowing.
    double continued_radius(size_t ell) const {
        if (ell == 0) throw std::invalid_argument("annulus index is 1-based");
        if (ell <= radii.size()) return radii[ell - 1];
        double r = radii.empty() ? base_multiplier : radii.back();
        for (size_t k = radii.size(); k < ell; ++k) {
            if (std::log(r) * tail_exponent > 690.0) return 1e300;
            r = std::pow(r, tail_exponent);
        }
        return r;
    }

    void validate(const LatticeConfig& cfg) const {
        constexpr double tol = 1.0 + 1e-12;
        if (radii.empty()) return;
        if (!(radii.front() * tol >= base_multiplier * cfg.c))
            throw std::invalid_argument("RadiiSchedule: r_1 < base_multiplier * c");
        for (size_t i = 0; i + 1 < radii.size(); ++i) {
            if (!(radii[i + 1] > radii[i]))
                throw std::invalid_argument("RadiiSchedule: radii must be strictly increasing");
            double need = law == GrowthLaw::multiplicative ? radii[i] * growth
                                                           : std::pow(radii[i], growth);
            if (!(radii[i + 1] * tol >= need))
                throw std::invalid_argument("RadiiSchedule: growth law violated");
        }
    }

    static RadiiSchedule desk_default(const LatticeConfig& cfg, int count, double factor = 4.0) {
        RadiiSchedule s;
        s.law = GrowthLaw::multiplicative;
        s.growth = factor;
        s.base_multiplier = 8.0;
        double r = 8.0 * cfg.c;
        for (int i = 0; i < count; ++i) {
            s.radii.push_back(r);
            r *= factor;
        }
        return s;
    }

    static RadiiSchedule paper_law(const LatticeConfig& cfg, int count) {
        RadiiSchedule s;
        s.law = GrowthLaw::power;
        s.growth = 4.0;
        s.base_multiplier = 2020.0;
        double r = 2020.0 * cfg.c;
        for (int i = 0; i < count; ++i) {
            s.radii.push_back(r);
            r = std::pow(r, 4.0);
        }
        return s;
    }
};

// ---------------------------------------------------------------------------
// Offset cases (the per-annulus assignment rules)
// ---------------------------------------------------------------------------

enum class CaseTag { I, II, II_prime, III, III_prime };

inline const char* case_tag_name(CaseTag t) {
    switch (t) {
        case CaseTag::I: return "I";
        case CaseTag::II: return "II";
        case CaseTag::II_prime: return "II'";
        case CaseTag::III: return "III";
        case CaseTag::III_prime: return "III'";
    }
    return "?";
}

/// Marked torus points y_1, y_2, ... in the strip {1/6 <= Re < 1/3, 0 <= Im < 1}.
inline std::vector<cplx> default_marked_points(int k_max) {
    std::vector<cplx> ys;
    ys.reserve(static_cast<size_t>(k_max));
    for (int i = 1; i <= k_max; ++i)
        ys.emplace_back(1.0 / 6.0, (i - 1) / (2.0 * k_max));
    return ys;
}

/// Halving weights alpha_l = 2^-l, which sum to 1 over the infinite family.
inline std::vector<double> halving_weights(int count) {
    std::vector<double> w(static_cast<size_t>(count));
    double a = 0.5;
    for (auto& x : w) { x = a; a *= 0.5; }
    return w;
}

struct OffsetCase {
    CaseTag tag = CaseTag::I;
    std::vector<int> index_set;        // 1-based marked indices (II / II')
    std::vector<double> weights;       // alpha_l (III / III'); treated as the full family
    std::vector<cplx> marked_points;   // the y-family, 1-based by index

    void validate() const {
        for (cplx y : marked_points) {
            if (!(y.real() >= 1.0 / 6.0 - 1e-15 && y.real() < 1.0 / 3.0 && y.imag() >= 0.0 && y.imag() < 1.0))
                throw std::invalid_argument("OffsetCase: marked point outside the strip [1/6,1/3) x [0,1)");
        }
        for (size_t i = 0; i < marked_points.size(); ++i)
            for (size_t j = i + 1; j < marked_points.size(); ++j)
                if (std::abs(marked_points[i] - marked_points[j]) < 1e-12)
                    throw std::invalid_argument("OffsetCase: marked points must be pairwise distinct");
        if (tag == CaseTag::II || tag == CaseTag::II_prime) {
            if (index_set.empty())
                throw std::invalid_argument("OffsetCase: finite index set must be nonempty");
            for (int i : index_set)
                if (i < 1 || static_cast<size_t>(i) > marked_points.size())
                    throw std::invalid_argument("OffsetCase: index set entry has no marked point");
        }
        if (tag == CaseTag::III || tag == CaseTag::III_prime) {
            if (weights.empty()) throw std::invalid_argument("OffsetCase: weights required for Case III");
            double s = 0.0;
            for (double a : weights) {
                if (!(a > 0.0)) throw std::invalid_argument("OffsetCase: weights must be positive");
                s += a;
            }
            if (s > 1.0 + 1e-9)
                throw std::invalid_argument("OffsetCase: weights must sum to at most 1");
        }
    }

    static OffsetCase sparse() { return {CaseTag::I, {}, {}, {}}; }
    static OffsetCase concentrated(std::vector<int> idx, std::vector<cplx> ys, bool prime = false) {
        return {prime ? CaseTag::II_prime : CaseTag::II, std::move(idx), {}, std::move(ys)};
    }
    static OffsetCase weighted(std::vector<double> w, std::vector<cplx> ys, bool prime = false) {
        return {prime ? CaseTag::III_prime : CaseTag::III, {}, std::move(w), std::move(ys)};
    }
};

// ---------------------------------------------------------------------------
// sigma-encoding of radii subsequences
// ---------------------------------------------------------------------------

/// Descriptor for an element of S = {finite nonempty subsets of Z+} u {0, Z+}.
struct IndexSet {
    enum class Kind { empty, all, finite };
    Kind kind = Kind::empty;
    std::vector<int> elems;  // finite: sorted, distinct, >= 1

    static IndexSet empty_set() { return {Kind::empty, {}}; }
    static IndexSet all() { return {Kind::all, {}}; }
    static IndexSet finite(std::vector<int> e) {
        if (e.empty())
            throw std::invalid_argument("IndexSet: finite descriptor must be nonempty (use empty_set())");
        std::sort(e.begin(), e.end());
        for (size_t i = 0; i + 1 < e.size(); ++i)
            if (e[i] == e[i + 1]) throw std::invalid_argument("IndexSet: duplicate element");
        if (e.front() < 1) throw std::invalid_argument("IndexSet: elements must be >= 1");
        return {Kind::finite, std::move(e)};
    }
};

/// sigma: S -> Z+. sigma(0) = 1, sigma(Z+) = 2, finite sets ordered by
/// (max element, then binary code sum 2^{i-1}) starting at 3.
inline int sigma_index(const IndexSet& I) {
    switch (I.kind) {
        case IndexSet::Kind::empty: return 1;
        case IndexSet::Kind::all: return 2;
        case IndexSet::Kind::finite: break;
    }
    int m = I.elems.back();
    if (m > 30) throw std::invalid_argument("sigma_index: max element too large to encode");
    long long code = 0;
    for (int i : I.elems)
        if (i != m) code += 1LL << (i - 1);
    long long pos = ((1LL << (m - 1)) - 1) + code + 1;  // rank within all finite sets
    long long sigma = pos + 2;
    if (sigma > (1LL << 30)) throw std::invalid_argument("sigma_index: overflow");
    return static_cast<int>(sigma);
}

inline IndexSet sigma_inverse(int n) {
    if (n < 1) throw std::invalid_argument("sigma_inverse: n must be >= 1");
    if (n == 1) return IndexSet::empty_set();
    if (n == 2) return IndexSet::all();
    long long p = n - 2;  // 1-based rank among finite sets
    int m = 1;
    while (((1LL << m) - 1) < p) ++m;
    long long q = p - ((1LL << (m - 1)) - 1) - 1;  // binary code of the {1..m-1} part
    std::vector<int> elems;
    for (int i = 1; i < m; ++i)
        if (q & (1LL << (i - 1))) elems.push_back(i);
    elems.push_back(m);
    return IndexSet::finite(std::move(elems));
}

/// Z_n := { 2^{n-1} (2k - 1) : k >= 1 } partitions Z+; returns the j-th
/// smallest element of Z_{sigma(I)}.
inline long long subsequence_index(const IndexSet& I, int j) {
    if (j < 1) throw std::invalid_argument("subsequence_index: j must be >= 1");
    int n = sigma_index(I);
    if (n > 60) throw std::invalid_argument("subsequence_index: sigma too large");
    return (1LL << (n - 1)) * (2LL * j - 1);
}

/// Inverse bookkeeping: annulus index i -> (I, j) with i = Z^I_j.
inline std::pair<IndexSet, int> subsequence_position(long long i) {
    if (i < 1) throw std::invalid_argument("subsequence_position: i must be >= 1");
    int n = 1;
    while ((i & 1) == 0) { i >>= 1; ++n; }
    int j = static_cast<int>((i + 1) / 2);
    return {sigma_inverse(n), j};
}

/// The offset case that the global construction prescribes for annulus i:
/// I for the empty set, II/II' (odd/even j) for finite sets, III/III' for Z+.
inline OffsetCase auto_case_for_annulus(long long i, std::vector<cplx> marked,
                                        std::vector<double> weights) {
    auto [I, j] = subsequence_position(i);
    bool odd = (j % 2) == 1;
    switch (I.kind) {
        case IndexSet::Kind::empty: return OffsetCase::sparse();
        case IndexSet::Kind::finite:
            return OffsetCase::concentrated(I.elems, std::move(marked), !odd);
        case IndexSet::Kind::all:
            return OffsetCase::weighted(std::move(weights), std::move(marked), !odd);
    }
    return OffsetCase::sparse();
}

// ---------------------------------------------------------------------------
// Point generation
// ---------------------------------------------------------------------------

/// Lattice points of c*Gamma in the closed annulus r/2 <= |mu| <= r, in
/// lexicographic (Re, Im) order. Boundary membership uses a 1e-12 relative
/// tolerance on |mu|^2 so exact-radius points are kept.
inline std::vector<cplx> enumerate_annulus_lattice(double r, const LatticeConfig& cfg) {
    if (!(r > 2.0 * cfg.c))
        throw std::domain_error("enumerate_annulus_lattice: empty annulus (requires r > 2c)");
    const double c = cfg.c;
    const double lo = (r * r / 4.0) * (1.0 - 1e-12);
    const double hi = (r * r) * (1.0 + 1e-12);
    const long amax = static_cast<long>(std::floor(r / c)) + 1;
    std::vector<cplx> pts;
    for (long a = -amax; a <= amax; ++a) {
        for (long b = -amax; b <= amax; ++b) {
            double n2 = c * c * static_cast<double>(a * a + b * b);
            if (n2 >= lo && n2 <= hi) pts.emplace_back(c * a, c * b);
        }
    }
    std::sort(pts.begin(), pts.end(), [](cplx x, cplx y) {
        if (x.real() != y.real()) return x.real() < y.real();
        return x.imag() < y.imag();
    });
    return pts;
}

/// The explicit sparse distribution in D_R = {1/2 <= Re < 1, 0 <= Im < 1}:
/// first N points of the grid ([sqrt(N)]+1+l1)/(2[sqrt(N)]+2) + l2/([sqrt(N)]+1) i,
/// rows (l2) outer, columns (l1) inner.
inline std::vector<cplx> sparse_grid(int n) {
    if (n < 1) throw std::invalid_argument("sparse_grid: N must be >= 1");
    const int q = static_cast<int>(std::floor(std::sqrt(static_cast<double>(n))));
    const int side = q + 1;
    if (side * side < n) throw std::logic_error("sparse_grid: capacity too small");  // impossible
    std::vector<cplx> pts;
    pts.reserve(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) {
        int l2 = k / side, l1 = k % side;
        pts.emplace_back((side + l1) / (2.0 * side), static_cast<double>(l2) / side);
    }
    return pts;
}

namespace detail {

inline uint64_t splitmix64(uint64_t& s) {
    uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

template <class T>
void deterministic_shuffle(std::vector<T>& xs, uint64_t seed) {
    if (seed == 0) return;  // seed 0 keeps the canonical order
    uint64_t state = seed;
    for (size_t i = xs.size(); i > 1; --i)
        std::swap(xs[i - 1], xs[splitmix64(state) % i]);
}

}  // namespace detail

/// Offsets x_mu for an annulus with n lattice points, in the order the points
/// are consumed (lexicographic). Marked values are assigned in blocks, y_{i_1}
/// first; sparse remainders come from sparse_grid(remainder), optionally
/// permuted by the seed.
inline std::vector<cplx> assign_offsets(size_t n, const OffsetCase& oc, uint64_t seed = 0) {
    oc.validate();
    if (n == 0) return {};
    std::vector<cplx> out;
    out.reserve(n);
    auto y = [&](int idx) { return oc.marked_points.at(static_cast<size_t>(idx) - 1); };

    auto fill_sparse = [&](size_t count) {
        if (count == 0) return;
        auto pts = sparse_grid(static_cast<int>(count));
        detail::deterministic_shuffle(pts, seed);
        out.insert(out.end(), pts.begin(), pts.end());
    };

    switch (oc.tag) {
        case CaseTag::I: {
            fill_sparse(n);
            break;
        }
        case CaseTag::II: {
            size_t k = oc.index_set.size();
            size_t quota = n / k;
            if (quota * k > n) throw std::domain_error("assign_offsets: infeasible floor counts");
            for (int idx : oc.index_set)
                out.insert(out.end(), quota, y(idx));
            out.insert(out.end(), n - out.size(), y(oc.index_set.front()));
            break;
        }
        case CaseTag::II_prime: {
            size_t k = oc.index_set.size();
            size_t quota = n / (2 * k);
            if (quota * k > n) throw std::domain_error("assign_offsets: infeasible floor counts");
            for (int idx : oc.index_set)
                out.insert(out.end(), quota, y(idx));
            fill_sparse(n - out.size());
            break;
        }
        case CaseTag::III:
        case CaseTag::III_prime: {
            bool prime = oc.tag == CaseTag::III_prime;
            size_t assigned = 0;
            size_t max_l = std::min(oc.weights.size(), oc.marked_points.size());
            for (size_t l = 0; l < max_l; ++l) {
                double alpha = oc.weights[l];
                size_t quota = static_cast<size_t>(std::floor(alpha * n / (prime ? 2.0 : 1.0)));
                if (quota == 0) continue;  // infeasible l, truncated away
                if (assigned + quota > n) throw std::domain_error("assign_offsets: infeasible floor counts");
                out.insert(out.end(), quota, y(static_cast<int>(l + 1)));
                assigned += quota;
            }
            if (prime)
                fill_sparse(n - assigned);
            else
                out.insert(out.end(), n - assigned, y(1));  // leftover slots go to y_1
            break;
        }
    }
    if (out.size() != n) throw std::logic_error("assign_offsets: count mismatch");
    return out;
}

// ---------------------------------------------------------------------------
// ZeroLocus
// ---------------------------------------------------------------------------

struct LocusPoint {
    cplx pos;      // lambda = mu + x_mu
    cplx offset;   // x_mu in the fundamental domain
    int annulus;   // 1-based schedule index
    CaseTag tag;
};

/// Disc or annulus region of the plane (for counting queries).
struct PlaneRegion {
    cplx center{0.0, 0.0};
    double r_inner = 0.0;  // 0 for a disc
    double r_outer = 0.0;

    static PlaneRegion disc(cplx c, double r) { return {c, 0.0, r}; }
    static PlaneRegion annulus(double lo, double hi) { return {{0.0, 0.0}, lo, hi}; }

    bool contains(cplx z) const {
        double d = std::abs(z - center);
        return d >= r_inner && d <= r_outer;
    }
    void validate() const {
        if (!(r_outer > 0.0) || r_inner < 0.0 || r_inner > r_outer)
            throw std::invalid_argument("PlaneRegion: invalid radii");
    }
};

/// The perturbed-lattice zero set Lambda = union of per-annulus batches
/// B_{r_i} = { mu + x_mu : mu in A_{r_i} n cGamma }. Immutable once built and
/// safe to share read-only across workers.
class ZeroLocus {
  public:
    ZeroLocus() = default;

    static ZeroLocus build(const RadiiSchedule& schedule, const std::map<int, OffsetCase>& cases,
                           const LatticeConfig& cfg, uint64_t seed = 0) {
        cfg.validate();
        schedule.validate(cfg);
        ZeroLocus L;
        L.schedule_ = schedule;
        L.cfg_ = cfg;
        for (size_t i = 0; i + 1 < schedule.radii.size(); ++i)
            if (!(schedule.radii[i + 1] >= 2.0 * schedule.radii[i]))
                throw std::domain_error("ZeroLocus: annuli overlap (needs growth >= 2)");
        for (int i = 1; i <= static_cast<int>(schedule.count()); ++i) {
            auto it = cases.find(i);
            if (it == cases.end())
                throw std::invalid_argument("ZeroLocus: missing offset case for annulus " + std::to_string(i));
            auto mus = enumerate_annulus_lattice(schedule.radius(i), cfg);
            auto offs = assign_offsets(mus.size(), it->second, seed ^ static_cast<uint64_t>(i));
            size_t begin = L.pts_.size();
            for (size_t k = 0; k < mus.size(); ++k)
                L.pts_.push_back({mus[k] + offs[k], offs[k], i, it->second.tag});
            L.ranges_.emplace_back(begin, L.pts_.size());
        }
        L.build_hash();
        L.check_separation();
        return L;
    }

    // Single-case convenience: the same case on every annulus.
    static ZeroLocus build_uniform(const RadiiSchedule& schedule, const OffsetCase& oc,
                                   const LatticeConfig& cfg, uint64_t seed = 0) {
        std::map<int, OffsetCase> cases;
        for (int i = 1; i <= static_cast<int>(schedule.count()); ++i) cases[i] = oc;
        return build(schedule, cases, cfg, seed);
    }

    /// Hand-placed zero set for tests and synthetic configurations. Skips the
    /// lattice bookkeeping and the separation check; no tail annuli.
    static ZeroLocus synthetic(const std::vector<cplx>& positions) {
        ZeroLocus L;
        for (cplx z : positions)
            L.pts_.push_back({z, torus_class(z), 1, CaseTag::I});
        L.ranges_.emplace_back(0, L.pts_.size());
        L.build_hash();
        return L;
    }

    const std::vector<LocusPoint>& points() const { return pts_; }
    size_t size() const { return pts_.size(); }
    bool empty() const { return pts_.empty(); }
    const RadiiSchedule& schedule() const { return schedule_; }
    const LatticeConfig& config() const { return cfg_; }

    std::pair<size_t, size_t> annulus_range(int i) const {
        return ranges_.at(static_cast<size_t>(i) - 1);
    }
    size_t annulus_count(int i) const {
        auto [b, e] = annulus_range(i);
        return e - b;
    }

    /// Index of the nearest locus point within `radius` of z, or -1. Exact for
    /// radius <= hash cell size (2.0); larger radii scan wider rings.
    long nearest_within(cplx z, double radius) const {
        if (pts_.empty()) return -1;
        int ring = static_cast<int>(std::ceil(radius / kCell)) + 1;
        long best = -1;
        double best_d = radius;
        long cx = cell_coord(z.real()), cy = cell_coord(z.imag());
        for (long ix = cx - ring; ix <= cx + ring; ++ix) {
            for (long iy = cy - ring; iy <= cy + ring; ++iy) {
                auto it = hash_.find(key(ix, iy));
                if (it == hash_.end()) continue;
                for (int idx : it->second) {
                    double d = std::abs(pts_[static_cast<size_t>(idx)].pos - z);
                    if (d <= best_d) { best_d = d; best = idx; }
                }
            }
        }
        return best;
    }

    double distance_to(cplx z) const {
        for (double rad = 1.0; rad <= 4097.0; rad *= 4.0) {
            long idx = nearest_within(z, rad);
            if (idx >= 0) return std::abs(pts_[static_cast<size_t>(idx)].pos - z);
        }
        return std::numeric_limits<double>::infinity();
    }

    double min_pairwise_distance() const {
        double best = std::numeric_limits<double>::infinity();
        for (size_t i = 0; i < pts_.size(); ++i) {
            long cx = cell_coord(pts_[i].pos.real()), cy = cell_coord(pts_[i].pos.imag());
            for (long ix = cx - 2; ix <= cx + 2; ++ix)
                for (long iy = cy - 2; iy <= cy + 2; ++iy) {
                    auto it = hash_.find(key(ix, iy));
                    if (it == hash_.end()) continue;
                    for (int j : it->second)
                        if (static_cast<size_t>(j) > i)
                            best = std::min(best, std::abs(pts_[i].pos - pts_[static_cast<size_t>(j)].pos));
                }
        }
        return best;
    }

    /// Number of locus points in the region whose torus class matches [y]
    /// exactly (offsets come from a finite marked set, so exact match is
    /// meaningful; tolerance 1e-9 absorbs storage rounding only).
    int count_in_class(cplx y, const PlaneRegion& region) const {
        region.validate();
        cplx yc = torus_class(y);
        int n = 0;
        for (const auto& p : pts_)
            if (region.contains(p.pos) && torus_dist(p.offset, yc) <= 1e-9) ++n;
        return n;
    }

    // Sum of 1/lambda over one annulus batch (Lemma-style cancellation check).
    cplx reciprocal_sum(int i) const {
        auto [b, e] = annulus_range(i);
        CompensatedSum re, im;
        for (size_t k = b; k < e; ++k) {
            cplx v = 1.0 / pts_[k].pos;
            re.add(v.real());
            im.add(v.imag());
        }
        return {re.value(), im.value()};
    }

    cplx reciprocal2_sum(int i) const {
        auto [b, e] = annulus_range(i);
        CompensatedSum re, im;
        for (size_t k = b; k < e; ++k) {
            cplx v = 1.0 / (pts_[k].pos * pts_[k].pos);
            re.add(v.real());
            im.add(v.imag());
        }
        return {re.value(), im.value()};
    }

  private:
    static constexpr double kCell = 2.0;
    static long cell_coord(double x) { return static_cast<long>(std::floor(x / kCell)); }
    static int64_t key(long ix, long iy) {
        return (static_cast<int64_t>(ix) << 32) ^ (static_cast<int64_t>(iy) & 0xffffffffLL);
    }

    void build_hash() {
        hash_.reserve(pts_.size() * 2);
        for (size_t i = 0; i < pts_.size(); ++i)
            hash_[key(cell_coord(pts_[i].pos.real()), cell_coord(pts_[i].pos.imag()))]
                .push_back(static_cast<int>(i));
    }

    void check_separation() const {
        if (pts_.size() < 2) return;
        double sep = min_pairwise_distance();
        double need = cfg_.c - std::sqrt(2.0);
        if (sep < need - 1e-9)
            throw std::logic_error("ZeroLocus: separation invariant violated");
    }

    std::vector<LocusPoint> pts_;
    std::vector<std::pair<size_t, size_t>> ranges_;
    RadiiSchedule schedule_;
    LatticeConfig cfg_;
    std::unordered_map<int64_t, std::vector<int>> hash_;
};

}  // namespace ahlfors
