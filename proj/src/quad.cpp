// Licensed under the Apache 2.0 license. See LICENSE in the project root.
#include "emax/quad.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace emax::quad {
namespace {

// 15-point Kronrod extension of the 7-point Gauss rule on [-1, 1].
// Positive abscissae; even indices are the embedded Gauss nodes.
constexpr double xgk[7] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
};

// 1 - xgk, written out so half * (1 - xgk) never cancels.
constexpr double one_minus_xgk[7] = {
    0.008544628879187360793145302473671,
    0.050892087657241475473810315952149,
    0.135135576640230927210287211359074,
    0.258468814400605560136135226719212,
    0.413912764532308869705855161741270,
    0.594154848622602833093393587923039,
    0.792215044992101532399310596226755,
};

constexpr double wgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};

constexpr double wg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

struct Cell {
    double lo_off;  // cell left edge as distance from a
    double hi_off;  // cell right edge as distance from b
    double width;
    double ik = 0;
    double err = 0;
    double resabs = 0;
};

struct Frame {
    double a, b;
    const Integrand* f;
};

double eval_at(const Frame& fr, double from_lo, double from_hi) {
    Node n;
    n.from_lo = from_lo;
    n.from_hi = from_hi;
    n.x = (from_lo <= from_hi) ? fr.a + from_lo : fr.b - from_hi;
    double v = (*fr.f)(n);
    if (!std::isfinite(v))
        throw std::domain_error("integrand returned a non-finite value");
    return v;
}

void evaluate_cell(const Frame& fr, Cell& c) {
    const double half = 0.5 * c.width;
    const double fc = eval_at(fr, c.lo_off + half, c.hi_off + half);

    double fl[7], fr_[7];
    for (int j = 0; j < 7; ++j) {
        const double near_ = half * one_minus_xgk[j];
        const double far_ = half * (1.0 + xgk[j]);
        fl[j] = eval_at(fr, c.lo_off + near_, c.hi_off + far_);
        fr_[j] = eval_at(fr, c.lo_off + far_, c.hi_off + near_);
    }

    double resk = wgk[7] * fc;
    double resabs = wgk[7] * std::fabs(fc);
    double resg = wg[3] * fc;
    for (int j = 0; j < 7; ++j) {
        const double sum = fl[j] + fr_[j];
        resk += wgk[j] * sum;
        resabs += wgk[j] * (std::fabs(fl[j]) + std::fabs(fr_[j]));
        if (j % 2 == 1)
            resg += wg[j / 2] * sum;
    }

    const double reskh = resk * 0.5;
    double resasc = wgk[7] * std::fabs(fc - reskh);
    for (int j = 0; j < 7; ++j)
        resasc += wgk[j] * (std::fabs(fl[j] - reskh) + std::fabs(fr_[j] - reskh));

    c.ik = resk * half;
    resabs *= half;
    resasc *= half;

    double err = std::fabs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double eps = std::numeric_limits<double>::epsilon();
    err = std::max(err, 50.0 * eps * resabs);
    c.err = err;
    c.resabs = resabs;
}

bool cell_order(const Cell& x, const Cell& y) { return x.err < y.err; }

} // namespace

Outcome try_integrate(const Integrand& f, double a, double b, const Options& opt) {
    if (!(a <= b))
        throw std::invalid_argument("integration bounds out of order");
    Outcome out;
    if (a == b) {
        out.converged = true;
        return out;
    }

    Frame fr{a, b, &f};
    const double length = b - a;
    std::vector<Cell> heap;
    heap.reserve(64);

    // Seed with a midpoint split so symmetric structure in the integrand
    // cannot hide inside a single rule application.
    const double half = 0.5 * length;
    Cell left{0.0, half, half};
    Cell right{half, 0.0, half};
    evaluate_cell(fr, left);
    evaluate_cell(fr, right);
    heap.push_back(left);
    heap.push_back(right);
    std::make_heap(heap.begin(), heap.end(), cell_order);

    double total_err = left.err + right.err;
    double total_resabs = left.resabs + right.resabs;

    auto total_value = [&heap]() {
        double v = 0;
        for (const Cell& c : heap)
            v += c.ik;
        return v;
    };

    // Cell errors are floored at the roundoff level of their absolute
    // mass, so once total_err reaches that floor for the whole interval,
    // further subdivision cannot reduce it; accept there. Integrals that
    // vanish by cancellation against an O(1) mass would otherwise never
    // satisfy a fixed absolute tolerance.
    const double eps = std::numeric_limits<double>::epsilon();

    while (true) {
        const double value = total_value();
        const double target = std::max({opt.abs_tol, opt.rel_tol * std::fabs(value),
                                        100.0 * eps * total_resabs});
        if (total_err <= target) {
            out.value = value;
            out.error = total_err;
            out.cells = static_cast<int>(heap.size());
            out.converged = true;
            return out;
        }
        if (static_cast<int>(heap.size()) >= opt.max_cells)
            break;

        std::pop_heap(heap.begin(), heap.end(), cell_order);
        Cell worst = heap.back();
        heap.pop_back();
        if (0.5 * worst.width == 0.0 || worst.width < 1e-300) {
            heap.push_back(worst);
            std::push_heap(heap.begin(), heap.end(), cell_order);
            break;
        }
        total_err -= worst.err;
        total_resabs -= worst.resabs;

        const double h2 = 0.5 * worst.width;
        Cell cl{worst.lo_off, worst.hi_off + h2, h2};
        Cell cr{worst.lo_off + h2, worst.hi_off, h2};
        evaluate_cell(fr, cl);
        evaluate_cell(fr, cr);
        total_err += cl.err + cr.err;
        total_resabs += cl.resabs + cr.resabs;
        heap.push_back(cl);
        std::push_heap(heap.begin(), heap.end(), cell_order);
        heap.push_back(cr);
        std::push_heap(heap.begin(), heap.end(), cell_order);
    }

    out.value = total_value();
    out.error = total_err;
    out.cells = static_cast<int>(heap.size());
    out.converged = false;
    return out;
}

double integrate(const Integrand& f, double a, double b, const Options& opt) {
    Outcome out = try_integrate(f, a, b, opt);
    if (!out.converged)
        throw ConvergenceError("quadrature did not converge (error " +
                                   std::to_string(out.error) + " after " +
                                   std::to_string(out.cells) + " cells)",
                               out);
    return out.value;
}

double integrate_plain(const std::function<double(double)>& f, double a, double b,
                       const Options& opt) {
    return integrate([&f](const Node& n) { return f(n.x); }, a, b, opt);
}

} // namespace emax::quad
