#include "fracdep/quadrature.hpp"

#include <array>
#include <cmath>
#include <queue>
#include <sstream>
#include <vector>

#include "fracdep/error.hpp"

namespace fracdep::specfun {

namespace {

// Kronrod 15-point abscissae on [-1, 1] (non-negative half) and weights;
// odd-indexed abscissae are the 7-point Gauss nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a;
    double b;
    double value;
    double error;
    int depth;

    bool operator<(const Segment& other) const { return error < other.error; }
};

double checked(const std::function<double(double)>& f, double x) {
    const double y = f(x);
    if (!std::isfinite(y)) {
        std::ostringstream os;
        os << "adaptive_quad: integrand is not finite at x = " << x;
        throw NumericalError(os.str());
    }
    return y;
}

Segment gauss_kronrod(const std::function<double(double)>& f, double a, double b, int depth) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = checked(f, center);
    double kronrod = fc * kWgk[7];
    double gauss = fc * kWg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double sum = checked(f, center - dx) + checked(f, center + dx);
        kronrod += kWgk[j] * sum;
        if (j % 2 == 1) gauss += kWg[j / 2] * sum;
    }
    kronrod *= half;
    gauss *= half;
    return {a, b, kronrod, std::abs(kronrod - gauss), depth};
}

}  // namespace

void QuadConfig::validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol >= 0.0) || max_depth < 1) {
        throw DomainError("QuadConfig: require rel_tol > 0, abs_tol >= 0, max_depth >= 1");
    }
}

QuadResult adaptive_quad_detailed(const std::function<double(double)>& f, double a, double b,
                                  const QuadConfig& cfg) {
    cfg.validate();
    if (!(std::isfinite(a) && std::isfinite(b)) || !(a < b)) {
        throw DomainError("adaptive_quad: require finite a < b");
    }

    std::priority_queue<Segment> heap;
    Segment first = gauss_kronrod(f, a, b, 0);
    double total = first.value;
    double total_error = first.error;
    int evaluations = 15;
    heap.push(first);

    // Cap on the live segment count; a pathological integrand would otherwise
    // exhaust memory before any single segment hits max_depth.
    constexpr std::size_t kMaxSegments = 100000;

    while (total_error > std::max(cfg.rel_tol * std::abs(total), cfg.abs_tol)) {
        Segment worst = heap.top();
        if (worst.depth >= cfg.max_depth || heap.size() >= kMaxSegments) {
            std::ostringstream os;
            os << "adaptive_quad: tolerance not met on [" << a << ", " << b
               << "] (estimate " << total << ", error " << total_error << ")";
            throw ConvergenceError(os.str());
        }
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(worst.a < mid && mid < worst.b)) {
            throw ConvergenceError("adaptive_quad: subinterval below floating-point resolution");
        }
        const Segment left = gauss_kronrod(f, worst.a, mid, worst.depth + 1);
        const Segment right = gauss_kronrod(f, mid, worst.b, worst.depth + 1);
        evaluations += 30;
        total += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);

        // Rebuild the running sums from scratch occasionally so cancellation in
        // the incremental updates cannot accumulate.
        if (evaluations % 3000 == 0) {
            std::vector<Segment> items;
            items.reserve(heap.size());
            total = 0.0;
            total_error = 0.0;
            while (!heap.empty()) {
                items.push_back(heap.top());
                heap.pop();
            }
            for (const auto& s : items) {
                total += s.value;
                total_error += s.error;
                heap.push(s);
            }
        }
    }

    // Final sum in a fixed order.
    double value = 0.0;
    double error = 0.0;
    while (!heap.empty()) {
        value += heap.top().value;
        error += heap.top().error;
        heap.pop();
    }
    return {value, error, evaluations};
}

double adaptive_quad(const std::function<double(double)>& f, double a, double b,
                     const QuadConfig& cfg) {
    return adaptive_quad_detailed(f, a, b, cfg).value;
}

}  // namespace fracdep::specfun
