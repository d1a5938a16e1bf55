#include "wchaos/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace wchaos {

namespace {

void require_valid_grid(const GridSpec& grid) {
  if (!(grid.horizon > 0.0)) {
    throw std::invalid_argument("GridSpec: horizon must be positive");
  }
  if (grid.cells < 1) {
    throw std::invalid_argument("GridSpec: cells must be at least 1");
  }
}

void require_same_grid(const CoeffTensor& f, const CoeffTensor& g, const char* op) {
  if (!(f.grid == g.grid)) {
    throw std::invalid_argument(std::string(op) + ": grid mismatch");
  }
}

void require_same_degree(const CoeffTensor& f, const CoeffTensor& g, const char* op) {
  if (f.degree != g.degree) {
    throw std::invalid_argument(std::string(op) + ": degree mismatch (" +
                                std::to_string(f.degree) + " vs " +
                                std::to_string(g.degree) + ")");
  }
}

}  // namespace

std::size_t tensor_size(const GridSpec& grid, int degree) {
  std::size_t n = 1;
  for (int i = 0; i < degree; ++i) n *= static_cast<std::size_t>(grid.cells);
  return n;
}

std::size_t reversed_flat_index(std::size_t flat, int m, int length) {
  std::size_t rev = 0;
  for (int d = 0; d < length; ++d) {
    rev = rev * static_cast<std::size_t>(m) + flat % static_cast<std::size_t>(m);
    flat /= static_cast<std::size_t>(m);
  }
  return rev;
}

CoeffTensor zero_tensor(const GridSpec& grid, int degree) {
  require_valid_grid(grid);
  if (degree < 0) throw std::invalid_argument("zero_tensor: negative degree");
  CoeffTensor f;
  f.grid = grid;
  f.degree = degree;
  f.c.assign(tensor_size(grid, degree), Complex(0.0, 0.0));
  return f;
}

CoeffTensor scalar_tensor(const GridSpec& grid, Complex value) {
  CoeffTensor f = zero_tensor(grid, 0);
  f.c[0] = value;
  return f;
}

CoeffTensor basis_vector(const GridSpec& grid, int k) {
  if (k < 0 || k >= grid.cells) {
    throw std::invalid_argument("basis_vector: cell index out of range");
  }
  CoeffTensor f = zero_tensor(grid, 1);
  f.c[static_cast<std::size_t>(k)] = Complex(1.0, 0.0);
  return f;
}

CoeffTensor basis_tensor(const GridSpec& grid, const std::vector<int>& word) {
  CoeffTensor f = zero_tensor(grid, static_cast<int>(word.size()));
  std::size_t flat = 0;
  for (int i : word) {
    if (i < 0 || i >= grid.cells) {
      throw std::invalid_argument("basis_tensor: cell index out of range");
    }
    flat = flat * static_cast<std::size_t>(grid.cells) + static_cast<std::size_t>(i);
  }
  f.c[flat] = Complex(1.0, 0.0);
  return f;
}

CoeffTensor operator+(const CoeffTensor& f, const CoeffTensor& g) {
  require_same_grid(f, g, "tensor sum");
  require_same_degree(f, g, "tensor sum");
  CoeffTensor out = f;
  for (std::size_t i = 0; i < out.c.size(); ++i) out.c[i] += g.c[i];
  return out;
}

CoeffTensor operator-(const CoeffTensor& f, const CoeffTensor& g) {
  require_same_grid(f, g, "tensor difference");
  require_same_degree(f, g, "tensor difference");
  CoeffTensor out = f;
  for (std::size_t i = 0; i < out.c.size(); ++i) out.c[i] -= g.c[i];
  return out;
}

CoeffTensor operator*(Complex a, const CoeffTensor& f) {
  CoeffTensor out = f;
  for (auto& v : out.c) v *= a;
  return out;
}

Complex inner(const CoeffTensor& f, const CoeffTensor& g) {
  require_same_grid(f, g, "inner");
  require_same_degree(f, g, "inner");
  Complex acc(0.0, 0.0);
  for (std::size_t i = 0; i < f.c.size(); ++i) acc += f.c[i] * std::conj(g.c[i]);
  return acc;
}

double l2_norm(const CoeffTensor& f) {
  double acc = 0.0;
  for (const auto& v : f.c) acc += std::norm(v);
  return std::sqrt(acc);
}

double max_abs(const CoeffTensor& f) {
  double acc = 0.0;
  for (const auto& v : f.c) acc = std::max(acc, std::abs(v));
  return acc;
}

bool is_zero(const CoeffTensor& f) {
  return std::all_of(f.c.begin(), f.c.end(),
                     [](const Complex& v) { return v == Complex(0.0, 0.0); });
}

CoeffTensor tensor(const CoeffTensor& f, const CoeffTensor& g) {
  require_same_grid(f, g, "tensor");
  CoeffTensor out = zero_tensor(f.grid, f.degree + g.degree);
  const std::size_t ng = g.c.size();
  for (std::size_t i = 0; i < f.c.size(); ++i) {
    for (std::size_t j = 0; j < ng; ++j) {
      out.c[i * ng + j] = f.c[i] * g.c[j];
    }
  }
  return out;
}

CoeffTensor contract_p(const CoeffTensor& f, const CoeffTensor& g, int p) {
  require_same_grid(f, g, "contract_p");
  const int n = f.degree;
  const int k = g.degree;
  if (p < 0 || p > std::min(n, k)) {
    throw std::invalid_argument("contract_p: p out of range");
  }
  const int m = f.grid.cells;
  const std::size_t size_t_block = tensor_size(f.grid, n - p);
  const std::size_t size_s_block = tensor_size(f.grid, p);
  const std::size_t size_u_block = tensor_size(f.grid, k - p);

  CoeffTensor out = zero_tensor(f.grid, n + k - 2 * p);
  for (std::size_t s = 0; s < size_s_block; ++s) {
    const std::size_t s_rev = reversed_flat_index(s, m, p);
    for (std::size_t t = 0; t < size_t_block; ++t) {
      const Complex fv = f.c[t * size_s_block + s];
      if (fv == Complex(0.0, 0.0)) continue;
      const std::size_t g_base = s_rev * size_u_block;
      const std::size_t out_base = t * size_u_block;
      for (std::size_t u = 0; u < size_u_block; ++u) {
        out.c[out_base + u] += fv * g.c[g_base + u];
      }
    }
  }
  return out;
}

CoeffTensor involution(const CoeffTensor& f) {
  CoeffTensor out = zero_tensor(f.grid, f.degree);
  const int m = f.grid.cells;
  for (std::size_t i = 0; i < f.c.size(); ++i) {
    out.c[i] = std::conj(f.c[reversed_flat_index(i, m, f.degree)]);
  }
  return out;
}

bool is_mirror_symmetric(const CoeffTensor& f, double tol) {
  if (tol < 0.0) throw std::invalid_argument("is_mirror_symmetric: negative tolerance");
  return max_abs(f - involution(f)) <= tol;
}

CoeffTensor project_indicator(const GridSpec& grid, double a, double b) {
  require_valid_grid(grid);
  if (a < 0.0 || a > b) {
    throw std::invalid_argument("project_indicator: requires 0 <= a <= b");
  }
  CoeffTensor f = zero_tensor(grid, 1);
  const double width = grid.cell_width();
  const double scale = std::sqrt(grid.cells / grid.horizon);
  for (int k = 0; k < grid.cells; ++k) {
    const double left = k * width;
    const double right = (k + 1) * width;
    const double overlap = std::max(0.0, std::min(b, right) - std::max(a, left));
    f.c[static_cast<std::size_t>(k)] = Complex(scale * overlap, 0.0);
  }
  return f;
}

}  // namespace wchaos
