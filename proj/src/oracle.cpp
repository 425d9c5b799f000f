#include "wsq/oracle.hpp"

#include <cmath>
#include <cstdint>
#include <queue>
#include <vector>

#include "wsq/summation.hpp"

namespace wsq {

namespace {

// One pending quadtree leaf.  fine_parts holds the one-panel estimates of
// its four children so a split never recomputes a panel.
struct Cell {
  Rect r;
  double fine_parts[4];
  double fine;
  double diff;  // |fine - coarse|, the refinement payoff estimate
  bool forced;  // contains the singular point
  std::uint64_t seq;
};

struct WorstFirst {
  bool operator()(const Cell& a, const Cell& b) const {
    if (a.diff != b.diff) return a.diff < b.diff;
    return a.seq > b.seq;  // older cells first on ties
  }
};

struct Worker {
  const std::function<double(double, double)>& f;
  const OracleOptions& opt;
  double floor_diam;         // smallest diameter for ordinary cells
  double forced_floor_diam;  // much smaller floor for singular cells
  double guard = 0.0;        // node exclusion radius, set per panel
  std::uint64_t seq = 0;
  std::size_t evals = 0;
  CompensatedSum accepted_val;
  CompensatedSum accepted_err;
  // Running totals over the heap, kept incrementally.
  double heap_val = 0.0;
  double heap_err = 0.0;
  std::priority_queue<Cell, std::vector<Cell>, WorstFirst> heap;

  double eval(double x, double y) {
    ++evals;
    if (opt.singular) {
      // A node can collide with the singular point when the point sits on
      // the subdivision lattice; nudge it away by a sliver of the current
      // cell.  Panels polluted this way belong to cells that contain the
      // singularity, and those are never accepted, so the nudge never
      // reaches the total.
      const double dx = x - (*opt.singular)[0];
      const double dy = y - (*opt.singular)[1];
      if (std::abs(dx) < guard && std::abs(dy) < guard) {
        x = (*opt.singular)[0] + (dx >= 0.0 ? guard : -guard);
        y = (*opt.singular)[1] + (dy >= 0.0 ? guard : -guard);
      }
    }
    return f(x, y);
  }

  double panel(const Rect& r) {
    guard = 0x1p-45 * r.diameter();
    auto g = [this](double x, double y) { return eval(x, y); };
    return gauss_panel(g, r, opt.panel_m);
  }

  bool contains_singularity(const Rect& r) const {
    return opt.singular && r.contains((*opt.singular)[0], (*opt.singular)[1]);
  }

  Cell make_cell(const Rect& r, double coarse) {
    const double xm = 0.5 * (r.x0 + r.x1);
    const double ym = 0.5 * (r.y0 + r.y1);
    const Rect child[4] = {{r.x0, xm, r.y0, ym},
                           {xm, r.x1, r.y0, ym},
                           {r.x0, xm, ym, r.y1},
                           {xm, r.x1, ym, r.y1}};
    Cell c;
    c.r = r;
    c.fine = 0.0;
    for (int q = 0; q < 4; ++q) {
      c.fine_parts[q] = panel(child[q]);
      c.fine += c.fine_parts[q];
    }
    c.diff = std::abs(c.fine - coarse);
    c.forced = contains_singularity(r);
    c.seq = seq++;
    return c;
  }

  void accept(const Cell& c) {
    accepted_val.add(c.fine);
    accepted_err.add(c.diff);
  }

  // Accept exhausted cells straight away, queue the rest.
  void place(Cell&& c) {
    const double floor = c.forced ? forced_floor_diam : floor_diam;
    const bool done =
        c.r.diameter() <= 2.0 * floor ||
        (!c.forced && c.diff <= 1e-14 * std::abs(c.fine));
    if (done) {
      accept(c);
      return;
    }
    heap_val += c.fine;
    heap_err += c.diff;
    heap.push(std::move(c));
  }
};

}  // namespace

OracleResult oracle_integrate(const std::function<double(double, double)>& f,
                              const Rect& domain, const OracleOptions& opt) {
  if (!(domain.x1 > domain.x0) || !(domain.y1 > domain.y0))
    throw std::invalid_argument("oracle_integrate: empty domain");
  if (!(opt.tol >= 0.0) || !(opt.rel_tol >= 0.0) ||
      !(opt.tol + opt.rel_tol > 0.0))
    throw std::invalid_argument("oracle_integrate: no tolerance given");

  Worker w{f,
           opt,
           opt.floor_frac * domain.diameter(),
           opt.forced_floor_frac * domain.diameter(),
           0.0,
           0,
           0,
           {},
           {},
           0.0,
           0.0,
           {}};
  w.place(w.make_cell(domain, w.panel(domain)));

  bool budget_ok = true;
  auto target = [&](double value) {
    return std::max(opt.tol, opt.rel_tol * std::abs(value));
  };
  while (!w.heap.empty()) {
    const double err = w.accepted_err.value() + w.heap_err;
    const double val = w.accepted_val.value() + w.heap_val;
    if (err <= target(val)) break;
    if (w.evals >= opt.max_evals) {
      budget_ok = false;
      break;
    }
    Cell top = w.heap.top();
    w.heap.pop();
    w.heap_val -= top.fine;
    w.heap_err -= top.diff;
    const double xm = 0.5 * (top.r.x0 + top.r.x1);
    const double ym = 0.5 * (top.r.y0 + top.r.y1);
    const Rect child[4] = {{top.r.x0, xm, top.r.y0, ym},
                           {xm, top.r.x1, top.r.y0, ym},
                           {top.r.x0, xm, ym, top.r.y1},
                           {xm, top.r.x1, ym, top.r.y1}};
    for (int q = 0; q < 4; ++q)
      w.place(w.make_cell(child[q], top.fine_parts[q]));
  }
  while (!w.heap.empty()) {
    w.accept(w.heap.top());
    w.heap.pop();
  }

  OracleResult res;
  res.value = w.accepted_val.value();
  res.err_est = w.accepted_err.value();
  res.evals = w.evals;
  res.converged = budget_ok && res.err_est <= target(res.value);
  return res;
}

}  // namespace wsq
