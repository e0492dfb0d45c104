#include "rcubic/cubature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <boost/math/quadrature/gauss.hpp>

#include "rcubic/errors.hpp"
#include "rcubic/summation.hpp"

namespace rcubic {

std::array<Rect, 4> Rect::quarters() const noexcept {
  const double xm = 0.5 * (x0 + x1);
  const double ym = 0.5 * (y0 + y1);
  return {Rect{x0, xm, y0, ym}, Rect{xm, x1, y0, ym}, Rect{x0, xm, ym, y1},
          Rect{xm, x1, ym, y1}};
}

namespace detail {

const GaussNodes& gauss_nodes() {
  static const GaussNodes nodes = [] {
    using Rule = boost::math::quadrature::gauss<double, kGaussPoints>;
    const auto& abscissa = Rule::abscissa();
    const auto& weights = Rule::weights();
    GaussNodes n{};
    std::size_t k = 0;
    // boost stores the nonnegative half; the first entry is the centre node.
    for (std::size_t i = abscissa.size(); i-- > 1;) {
      n.x[k] = -abscissa[i];
      n.w[k++] = weights[i];
    }
    for (std::size_t i = 0; i < abscissa.size(); ++i) {
      n.x[k] = abscissa[i];
      n.w[k++] = weights[i];
    }
    return n;
  }();
  return nodes;
}

}  // namespace detail

namespace {

struct Cell {
  Rect rect;
  double value;
  double error;
  std::array<double, 4> quarter_values;
};

// `coarse` is the rule applied to r itself, already known for refined cells.
Cell evaluate(const CellRule& rule, const Rect& r, double coarse) {
  Cell c{r, 0.0, 0.0, {}};
  const auto q = r.quarters();
  for (int i = 0; i < 4; ++i) c.quarter_values[i] = rule(q[i]);
  c.value = (c.quarter_values[0] + c.quarter_values[1]) +
            (c.quarter_values[2] + c.quarter_values[3]);
  c.error = std::abs(coarse - c.value);
  if (!std::isfinite(c.error)) c.error = std::numeric_limits<double>::infinity();
  return c;
}

template <class Body>
void for_each_index(std::size_t n, Execution execution, Body&& body) {
  if (execution == Execution::Parallel) {
    const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 1)
    for (long long i = 0; i < count; ++i) body(static_cast<std::size_t>(i));
  } else {
    for (std::size_t i = 0; i < n; ++i) body(i);
  }
}

double total_error(const std::vector<Cell>& cells) {
  std::vector<double> e(cells.size());
  std::transform(cells.begin(), cells.end(), e.begin(), [](const Cell& c) { return c.error; });
  return pairwise_sum(e);
}

}  // namespace

CubatureResult adaptive_cubature(const CellRule& rule, const Rect& domain,
                                 double abs_tol, const CubatureOptions& options) {
  if (!(abs_tol > 0.0)) throw InvalidArgument("abs_tol must be > 0");
  if (!(domain.x1 > domain.x0) || !(domain.y1 > domain.y0)) {
    throw InvalidArgument("cubature domain must have positive extent");
  }
  const int splits = std::max(1, options.initial_splits);
  std::vector<Cell> cells(static_cast<std::size_t>(splits) * splits);
  const double dx = (domain.x1 - domain.x0) / splits;
  const double dy = (domain.y1 - domain.y0) / splits;
  for_each_index(cells.size(), options.execution, [&](std::size_t k) {
    const auto i = static_cast<int>(k % splits);
    const auto j = static_cast<int>(k / splits);
    const Rect r{domain.x0 + i * dx, i + 1 == splits ? domain.x1 : domain.x0 + (i + 1) * dx,
                 domain.y0 + j * dy, j + 1 == splits ? domain.y1 : domain.y0 + (j + 1) * dy};
    cells[k] = evaluate(rule, r, rule(r));
  });

  CubatureResult result;
  std::vector<std::size_t> order;
  std::vector<Cell> children;
  for (;;) {
    const double err = total_error(cells);
    if (err <= abs_tol) {
      result.converged = true;
      break;
    }
    if (cells.size() + 3 > options.max_cells) break;

    // Refine the worst cells until their share covers half the excess error,
    // taking at least a fixed fraction of the cells to bound the round count.
    order.resize(cells.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    const std::size_t room = (options.max_cells - cells.size()) / 3;
    const std::size_t limit = std::min({options.max_batch, room, cells.size()});
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(limit),
                      order.end(), [&](std::size_t l, std::size_t r) {
                        if (cells[l].error != cells[r].error) return cells[l].error > cells[r].error;
                        return l < r;
                      });
    std::size_t batch = 0;
    double covered = 0.0;
    const double excess = err - abs_tol;
    const std::size_t min_batch = std::min(limit, std::max<std::size_t>(8, cells.size() / 32));
    while (batch < limit && cells[order[batch]].error > 0.0 &&
           (batch < min_batch || covered < 0.5 * excess)) {
      covered += cells[order[batch]].error;
      ++batch;
    }

    children.assign(batch * 4, Cell{});
    for_each_index(children.size(), options.execution, [&](std::size_t k) {
      const Cell& parent = cells[order[k / 4]];
      children[k] = evaluate(rule, parent.rect.quarters()[k % 4], parent.quarter_values[k % 4]);
    });
    // Parents are replaced in place by their first quarter; the other three
    // are appended in batch order, so the layout is deterministic.
    for (std::size_t b = 0; b < batch; ++b) {
      cells[order[b]] = children[4 * b];
      for (int q = 1; q < 4; ++q) cells.push_back(children[4 * b + q]);
    }
  }

  std::vector<double> values(cells.size());
  std::transform(cells.begin(), cells.end(), values.begin(), [](const Cell& c) { return c.value; });
  result.value = pairwise_sum(values);
  result.error = total_error(cells);
  result.cells = cells.size();
  return result;
}

}  // namespace rcubic
