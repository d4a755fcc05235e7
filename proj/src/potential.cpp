#include "wignerlab/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>

#include "log_product.hpp"

namespace wignerlab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

// 4- and 8-point Gauss-Legendre nodes/weights on [-1,1].
constexpr double kGl4X[4] = {-0.86113631159405258, -0.33998104358485626,
                             0.33998104358485626, 0.86113631159405258};
constexpr double kGl4W[4] = {0.34785484513745386, 0.65214515486254614,
                             0.65214515486254614, 0.34785484513745386};
constexpr double kGl8X[8] = {-0.96028985649753623, -0.79666647741362674,
                             -0.52553240991632899, -0.18343464249564980,
                             0.18343464249564980, 0.52553240991632899,
                             0.79666647741362674, 0.96028985649753623};
constexpr double kGl8W[8] = {0.10122853629037626, 0.22238103445337447,
                             0.31370664587788729, 0.36268378337836198,
                             0.36268378337836198, 0.31370664587788729,
                             0.22238103445337447, 0.10122853629037626};

double log_potential_xy(const std::vector<double>& atoms, double x, double y) {
    detail::LogProductAccumulator acc;
    const double y2 = y * y;
    for (double a : atoms) {
        const double dx = x - a;
        acc.mul(dx * dx + y2);
    }
    if (acc.hit_zero()) return -kInf;
    return 0.5 * acc.log_value() / static_cast<double>(atoms.size());
}

} // namespace

ComplexPoint inverse_joukowski(ComplexPoint z) {
    if (z.imag() == 0.0 && std::fabs(z.real()) <= 2.0) {
        // On the segment: w = e^{i theta} with z = 2 cos theta; take Im w >= 0.
        const double c = 0.5 * z.real();
        return ComplexPoint(c, std::sqrt(std::max(1.0 - c * c, 0.0)));
    }
    const ComplexPoint s = std::sqrt(z * z - 4.0);
    // Root of larger modulus first (no cancellation), small root as its inverse.
    const ComplexPoint big =
        (z.real() * s.real() + z.imag() * s.imag()) >= 0.0 ? 0.5 * (z + s) : 0.5 * (z - s);
    ComplexPoint w = 1.0 / big;
    if (std::norm(w) > 1.0) w = 1.0 / w;
    return w;
}

double sc_potential(ComplexPoint z) {
    const ComplexPoint w = inverse_joukowski(z);
    const double re2 = w.real() * w.real() - w.imag() * w.imag();
    const double n = std::norm(w);
    return 0.5 * re2 - 0.5 * std::log(n);
}

double log_potential(const AtomicMeasure& mu, ComplexPoint z) {
    return log_potential_xy(mu.atoms(), z.real(), z.imag());
}

double fs_density(ComplexPoint z) {
    const double t = 1.0 + std::norm(z);
    return 1.0 / (kPi * t * t);
}

namespace {

// ---------------------------------------------------------------------------
// Adaptive 2D quadrature of |u_mu - u_nu| * weight over a rectangle.
// ---------------------------------------------------------------------------

struct PotentialDiffIntegrand {
    const std::vector<double>* mu_atoms = nullptr;
    const std::vector<double>* nu_atoms = nullptr; // null -> semicircle
    bool fs_weight = true;

    double diff(double x, double y) const {
        const double umu = log_potential_xy(*mu_atoms, x, y);
        const double unu = nu_atoms ? log_potential_xy(*nu_atoms, x, y)
                                    : sc_potential(ComplexPoint(x, y));
        if (umu == unu) return 0.0; // covers -inf vs -inf when atoms coincide
        const double d = umu - unu;
        if (!std::isfinite(d)) return kInf;
        return std::fabs(d);
    }

    double weight(double x, double y) const {
        if (!fs_weight) return 1.0;
        const double t = 1.0 + x * x + y * y;
        return 1.0 / (kPi * t * t);
    }

    double operator()(double x, double y) const {
        const double d = diff(x, y);
        if (d == 0.0) return 0.0;
        // A quadrature node exactly on an atom (measure zero; the even GL
        // rules have no node at a panel centre) must not poison the sums.
        if (!std::isfinite(d)) return 0.0;
        return d * weight(x, y);
    }

    // Atom positions of both measures with their absolute log-weights, for
    // the singular-core fallback of floor panels.
    void collect_singular(std::vector<double>& pos, std::vector<double>& w) const {
        const double wm = 1.0 / static_cast<double>(mu_atoms->size());
        for (double a : *mu_atoms) {
            pos.push_back(a);
            w.push_back(wm);
        }
        if (nu_atoms) {
            const double wn = 1.0 / static_cast<double>(nu_atoms->size());
            for (double a : *nu_atoms) {
                pos.push_back(a);
                w.push_back(wn);
            }
        }
    }
};

struct Panel {
    double x0, x1, y0, y1;
    double value, error;
    std::uint32_t id;
};

struct PanelOrder {
    bool operator()(const Panel& a, const Panel& b) const {
        if (a.error != b.error) return a.error < b.error;
        return a.id > b.id; // deterministic tie break: older panel first
    }
};

template <typename F>
double tensor_gl(const F& f, double x0, double x1, double y0, double y1, const double* xs,
                 const double* ws, int m) {
    const double hx = 0.5 * (x1 - x0), cx = 0.5 * (x1 + x0);
    const double hy = 0.5 * (y1 - y0), cy = 0.5 * (y1 + y0);
    double total = 0.0;
    for (int i = 0; i < m; ++i) {
        const double x = cx + hx * xs[i];
        double row = 0.0;
        for (int j = 0; j < m; ++j) {
            row += ws[j] * f(x, cy + hy * xs[j]);
        }
        total += ws[i] * row;
    }
    return total * hx * hy;
}

void evaluate_panel(const PotentialDiffIntegrand& f, Panel& p) {
    const double v4 = tensor_gl(f, p.x0, p.x1, p.y0, p.y1, kGl4X, kGl4W, 4);
    const double v8 = tensor_gl(f, p.x0, p.x1, p.y0, p.y1, kGl8X, kGl8W, 8);
    p.value = v8;
    p.error = std::fabs(v8 - v4);
}

// Floor-width panel containing atoms: close it with the exact polar integral
// of the log core over the enclosing half-disc,
// 2 pi integral_0^r |log t| t dt = pi r^2 (1/2 - log r) for r < 1,
// plus the regular remainder sampled on the top edge (off the atom axis).
void close_singular_panel(const PotentialDiffIntegrand& f, Panel& p,
                          const std::vector<double>& pos, const std::vector<double>& w) {
    const double dx = p.x1 - p.x0, dy = p.y1 - p.y0;
    const double r = 0.5 * std::hypot(dx, dy);
    const double half_disc = 0.5 * ((r < 1.0) ? kPi * r * r * (0.5 - std::log(r)) : kPi * r * r);
    double core = 0.0;
    for (std::size_t i = 0; i < pos.size(); ++i) {
        if (pos[i] >= p.x0 && pos[i] <= p.x1) core += w[i] * half_disc;
    }
    const double reg = f(0.5 * (p.x0 + p.x1), p.y1);
    p.value = core * f.weight(0.5 * (p.x0 + p.x1), 0.5 * (p.y0 + p.y1)) +
              (std::isfinite(reg) ? reg : 0.0) * dx * dy;
    p.error = 0.5 * p.value;
}

bool panel_contains_atom(const Panel& p, const std::vector<double>& pos) {
    if (p.y0 > 0.0) return false;
    for (double a : pos) {
        if (a >= p.x0 && a <= p.x1) return true;
    }
    return false;
}

double neumaier_sum(std::vector<double>& v) {
    double sum = 0.0, comp = 0.0;
    for (double x : v) {
        const double t = sum + x;
        comp += (std::fabs(sum) >= std::fabs(x)) ? (sum - t) + x : (x - t) + sum;
        sum = t;
    }
    return sum + comp;
}

QuadratureResult integrate_abs_diff(const PotentialDiffIntegrand& f, double x0, double x1,
                                    double y0, double y1, const QuadratureOptions& opts,
                                    int init_x, int init_y) {
    std::vector<double> sing_pos, sing_w;
    f.collect_singular(sing_pos, sing_w);

    std::priority_queue<Panel, std::vector<Panel>, PanelOrder> queue;
    std::vector<Panel> done;
    std::uint32_t next_id = 0;
    double err_total = 0.0;
    int count = 0;

    auto push_panel = [&](double a, double b, double c, double d) {
        Panel p{a, b, c, d, 0.0, 0.0, next_id++};
        evaluate_panel(f, p);
        err_total += p.error;
        queue.push(p);
        ++count;
    };

    const double wx = (x1 - x0) / init_x, wy = (y1 - y0) / init_y;
    for (int i = 0; i < init_x; ++i) {
        for (int j = 0; j < init_y; ++j) {
            push_panel(x0 + i * wx, x0 + (i + 1) * wx, y0 + j * wy, y0 + (j + 1) * wy);
        }
    }

    while (err_total > opts.abs_tol && !queue.empty() && count < opts.max_panels) {
        Panel top = queue.top();
        queue.pop();
        err_total -= top.error;
        const double dx = top.x1 - top.x0, dy = top.y1 - top.y0;
        if (dx <= opts.min_width || dy <= opts.min_width) {
            if (panel_contains_atom(top, sing_pos)) {
                close_singular_panel(f, top, sing_pos, sing_w);
            }
            done.push_back(top);
            err_total += top.error;
            if (queue.empty()) break;
            // all remaining refinable mass sits in the queue; if the queue's
            // contribution alone is under tolerance we cannot improve further
            continue;
        }
        const double xm = 0.5 * (top.x0 + top.x1), ym = 0.5 * (top.y0 + top.y1);
        push_panel(top.x0, xm, top.y0, ym);
        push_panel(xm, top.x1, top.y0, ym);
        push_panel(top.x0, xm, ym, top.y1);
        push_panel(xm, top.x1, ym, top.y1);
    }

    while (!queue.empty()) {
        done.push_back(queue.top());
        queue.pop();
    }
    std::sort(done.begin(), done.end(),
              [](const Panel& a, const Panel& b) { return a.id < b.id; });
    std::vector<double> vals, errs;
    vals.reserve(done.size());
    errs.reserve(done.size());
    for (const Panel& p : done) {
        vals.push_back(p.value);
        errs.push_back(p.error);
    }
    QuadratureResult result;
    result.value = neumaier_sum(vals);
    result.error_estimate = neumaier_sum(errs);
    result.panels = count;
    result.converged = result.error_estimate <= opts.abs_tol;
    return result;
}

QuadratureResult dist_potential_impl(const AtomicMeasure& mu, const AtomicMeasure* nu,
                                     const QuadratureOptions& opts) {
    PotentialDiffIntegrand f;
    f.mu_atoms = &mu.atoms();
    f.nu_atoms = nu ? &nu->atoms() : nullptr;
    f.fs_weight = true;

    double support = std::max(std::fabs(mu.min_atom()), std::fabs(mu.max_atom()));
    const double dm1 = std::fabs(mu.mean() - (nu ? nu->mean() : 0.0));
    const double dm2 = std::fabs(mu.second_moment() - (nu ? nu->second_moment() : 1.0));
    if (nu) {
        support = std::max({support, std::fabs(nu->min_atom()), std::fabs(nu->max_atom())});
    } else {
        support = std::max(support, 2.0);
    }
    const double R = std::max(10.0, 2.5 * support);

    // Both potentials are symmetric in y (real atoms): integrate the upper
    // half strip at half tolerance and double.
    QuadratureOptions half = opts;
    half.abs_tol = 0.5 * opts.abs_tol;
    QuadratureResult res = integrate_abs_diff(f, -R, R, 0.0, R, half, 8, 4);
    res.value *= 2.0;
    res.error_estimate *= 2.0;
    // Outside the square: u_mu - u_nu = Re sum_k (M_k(nu)-M_k(mu))/(k z^k),
    // so |u_mu - u_nu| <= dM1/|z| + dM2/(2|z|^2) + (4/3) S^3/|z|^3 once
    // |z| >= 2S; integrating each power against fs_density <= 1/(pi |z|^4)
    // over |z| > R gives the bound below.
    res.tail_bound = dm1 * (2.0 / 3.0) / (R * R * R) + dm2 / (4.0 * R * R * R * R) +
                     (8.0 / 15.0) * support * support * support / (R * R * R * R * R);
    res.converged = res.error_estimate <= opts.abs_tol;
    return res;
}

double require_converged(const QuadratureResult& r, const QuadratureOptions& opts) {
    if (!r.converged) {
        throw QuadratureAccuracyError(
            "dist_potential: refinement cap reached before tolerance; achieved " +
                std::to_string(r.error_estimate) + " requested " + std::to_string(opts.abs_tol),
            r.error_estimate);
    }
    return r.value;
}

} // namespace

double dist_potential(const AtomicMeasure& mu, SemicircleLaw, const QuadratureOptions& opts) {
    return require_converged(dist_potential_impl(mu, nullptr, opts), opts);
}

double dist_potential(const AtomicMeasure& mu, const AtomicMeasure& nu,
                      const QuadratureOptions& opts) {
    return require_converged(dist_potential_impl(mu, &nu, opts), opts);
}

QuadratureResult dist_potential_detailed(const AtomicMeasure& mu, SemicircleLaw,
                                         const QuadratureOptions& opts) {
    return dist_potential_impl(mu, nullptr, opts);
}

QuadratureResult dist_potential_detailed(const AtomicMeasure& mu, const AtomicMeasure& nu,
                                         const QuadratureOptions& opts) {
    return dist_potential_impl(mu, &nu, opts);
}

QuadratureResult l1_neighborhood(const AtomicMeasure& mu, double eps,
                                 const QuadratureOptions& opts) {
    if (!(eps > 0.0)) throw std::invalid_argument("l1_neighborhood: eps must be positive");
    PotentialDiffIntegrand f;
    f.mu_atoms = &mu.atoms();
    f.nu_atoms = nullptr;
    f.fs_weight = false;
    QuadratureOptions half = opts;
    half.abs_tol = 0.5 * opts.abs_tol;
    QuadratureResult res = integrate_abs_diff(f, -2.0 - eps, 2.0 + eps, 0.0, eps, half, 8, 2);
    res.value *= 2.0;
    res.error_estimate *= 2.0;
    res.converged = res.error_estimate <= opts.abs_tol;
    return res;
}

// ---------------------------------------------------------------------------
// W1 distance, exact piecewise.
// ---------------------------------------------------------------------------

namespace {

// integral over [a,b] of |c - F_sc|, with F_sc monotone; split at the crossing.
double w1_segment_vs_sc(double c, double a, double b) {
    if (b <= a) return 0.0;
    auto piece = [](double c_, double lo, double hi) {
        // integral of (c - F_sc) over [lo, hi], signed
        return c_ * (hi - lo) - (sc_cdf_integral(hi) - sc_cdf_integral(lo));
    };
    const double fa = sc_cdf(a), fb = sc_cdf(b);
    if (c <= std::min(fa, fb)) return -piece(c, a, b);
    if (c >= std::max(fa, fb)) return piece(c, a, b);
    const double x = sc_quantile(c);
    return std::fabs(piece(c, a, x)) + std::fabs(piece(c, x, b));
}

} // namespace

double w1_distance(const AtomicMeasure& mu, SemicircleLaw) {
    const auto& atoms = mu.atoms();
    const double w = mu.weight();
    const double lo = std::min(atoms.front(), -2.0);
    const double hi = std::max(atoms.back(), 2.0);
    double total = 0.0;
    double prev = lo;
    for (std::size_t k = 0; k <= atoms.size(); ++k) {
        const double next = (k < atoms.size()) ? atoms[k] : hi;
        total += w1_segment_vs_sc(static_cast<double>(k) * w, prev, next);
        prev = next;
    }
    return total;
}

double w1_distance(const AtomicMeasure& mu, const AtomicMeasure& nu) {
    const auto& a = mu.atoms();
    const auto& b = nu.atoms();
    std::vector<double> pts;
    pts.reserve(a.size() + b.size());
    pts.insert(pts.end(), a.begin(), a.end());
    pts.insert(pts.end(), b.begin(), b.end());
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
        total += std::fabs(mu.cdf(pts[k]) - nu.cdf(pts[k])) * (pts[k + 1] - pts[k]);
    }
    return total;
}

// ---------------------------------------------------------------------------
// Sup-interval discrepancy, exact scan.
// ---------------------------------------------------------------------------

namespace {

// Shared scan: D runs over the interleaved values F_mu(x-)-F_nu(x-),
// F_mu(x+)-F_nu(x+) at every atom of either measure, padded with 0 at both
// infinities. Every interval mass mu(I)-nu(I) (any endpoint flavours) is a
// difference D(t)-D(s) with s <= t in the x-,x+ order, so the sup of
// |mu(I)-nu(I)| is max(D - running min, running max - D) over the sequence.
template <typename CdfPair>
double discrepancy_scan(const std::vector<double>& events, const CdfPair& cdfs) {
    double run_min = 0.0, run_max = 0.0, best = 0.0;
    auto step = [&](double d) {
        best = std::max({best, d - run_min, run_max - d});
        run_min = std::min(run_min, d);
        run_max = std::max(run_max, d);
    };
    for (double x : events) {
        const auto [dl, dr] = cdfs(x);
        step(dl); // left limit comes first: [x,x] has mass D(x+) - D(x-)
        step(dr);
    }
    step(0.0); // intervals reaching +infinity
    return best;
}

std::vector<double> merged_atoms(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> events;
    events.reserve(a.size() + b.size());
    events.insert(events.end(), a.begin(), a.end());
    events.insert(events.end(), b.begin(), b.end());
    std::sort(events.begin(), events.end());
    events.erase(std::unique(events.begin(), events.end()), events.end());
    return events;
}

} // namespace

double interval_discrepancy(const AtomicMeasure& mu, SemicircleLaw) {
    std::vector<double> events = mu.atoms();
    events.erase(std::unique(events.begin(), events.end()), events.end());
    // The semicircle has no atoms, but D keeps decreasing between events; the
    // infima just before each atom and at +-2 are captured by the left values
    // and the explicit endpoint events.
    events.push_back(-2.0);
    events.push_back(2.0);
    std::sort(events.begin(), events.end());
    events.erase(std::unique(events.begin(), events.end()), events.end());
    return discrepancy_scan(events, [&](double x) {
        const double f = sc_cdf(x);
        return std::pair<double, double>(mu.cdf_left(x) - f, mu.cdf(x) - f);
    });
}

double interval_discrepancy(const AtomicMeasure& mu, const AtomicMeasure& nu) {
    const std::vector<double> events = merged_atoms(mu.atoms(), nu.atoms());
    return discrepancy_scan(events, [&](double x) {
        return std::pair<double, double>(mu.cdf_left(x) - nu.cdf_left(x),
                                         mu.cdf(x) - nu.cdf(x));
    });
}

double potential_gap(const AtomicMeasure& mu, const std::vector<double>& grid) {
    if (grid.empty()) throw std::invalid_argument("potential_gap: empty grid");
    double best = -kInf;
    for (double x : grid) {
        if (std::binary_search(mu.atoms().begin(), mu.atoms().end(), x)) continue;
        const double g = log_potential(mu, ComplexPoint(x, 0.0)) - sc_potential(ComplexPoint(x, 0.0));
        best = std::max(best, g);
    }
    return best;
}

std::vector<double> chebyshev_grid(std::size_t count) {
    if (count < 2) return {0.0};
    std::vector<double> grid(count);
    for (std::size_t k = 0; k < count; ++k) {
        grid[k] = -2.0 * std::cos(kPi * static_cast<double>(k) / static_cast<double>(count - 1));
    }
    return grid;
}

double mass_outside(const AtomicMeasure& mu, double lo, double hi) {
    if (lo > hi) throw std::invalid_argument("mass_outside: lo > hi");
    std::size_t outside = 0;
    for (double a : mu.atoms()) {
        if (a < lo || a > hi) ++outside;
    }
    return static_cast<double>(outside) * mu.weight();
}

} // namespace wignerlab
