// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>
#include <string>

#include "exp_sum.hpp"

namespace fracbin::precise {
namespace {

/// Coefficients of one bilinear factor (a0 + a1 w) + (b0 + b1 w) v.
template <unsigned D>
struct Factor {
  Big<D> a0, a1, b0, b1;
};

/// New coefficient of v^n w^k after multiplying by a factor. Missing
/// neighbours are passed as nullptr; the summation order is fixed so the
/// serial and parallel kernels agree bit for bit.
template <unsigned D>
Big<D> combine(const Factor<D>& f, const Big<D>* g00, const Big<D>* g01, const Big<D>* g10,
               const Big<D>* g11) {
  Big<D> acc = 0;
  if (g00) acc += f.a0 * *g00;
  if (g01) acc += f.a1 * *g01;
  if (g10) acc += f.b0 * *g10;
  if (g11) acc += f.b1 * *g11;
  return acc;
}

/// Serial reference: in-place update sweeping indices downwards.
template <unsigned D>
void multiply_serial(ExpSumTable<D>& g, int deg_v, int deg_w, const Factor<D>& f) {
  for (int n = deg_v + 1; n >= 0; --n) {
    for (int k = deg_w + 1; k >= 0; --k) {
      const bool has_n = n <= deg_v;
      const bool has_k = k <= deg_w;
      g.at(n, k) = combine<D>(f, has_n && has_k ? &g.at(n, k) : nullptr,
                              has_n && k > 0 ? &g.at(n, k - 1) : nullptr,
                              n > 0 && has_k ? &g.at(n - 1, k) : nullptr,
                              n > 0 && k > 0 ? &g.at(n - 1, k - 1) : nullptr);
    }
  }
}

/// OpenMP kernel: double-buffered, rows are independent.
template <unsigned D>
void multiply_parallel(ExpSumTable<D>& g, ExpSumTable<D>& scratch, int deg_v, int deg_w,
                       const Factor<D>& f) {
  const int rows = deg_v + 2;
#pragma omp parallel for schedule(dynamic, 1)
  for (int n = 0; n < rows; ++n) {
    for (int k = 0; k <= deg_w + 1; ++k) {
      const bool has_n = n <= deg_v;
      const bool has_k = k <= deg_w;
      scratch.at(n, k) = combine<D>(f, has_n && has_k ? &g.at(n, k) : nullptr,
                                    has_n && k > 0 ? &g.at(n, k - 1) : nullptr,
                                    n > 0 && has_k ? &g.at(n - 1, k) : nullptr,
                                    n > 0 && k > 0 ? &g.at(n - 1, k - 1) : nullptr);
    }
  }
  for (int n = 0; n < rows; ++n) {
    for (int k = 0; k <= deg_w + 1; ++k) std::swap(g.at(n, k), scratch.at(n, k));
  }
}

}  // namespace

template <unsigned D>
ExpSumTable<D> general_table(const ProcessParams& params, Exec exec) {
  const int N = params.N();
  const int M = params.M();
  ExpSumTable<D> g;
  g.rows = N + 1;
  g.cols = N + 1;
  g.rate = params.total_rate();
  g.c.assign(static_cast<std::size_t>(g.rows) * g.cols, Big<D>(0));
  g.at(0, 0) = 1;

  const Big<D> p = Big<D>(params.lambda()) / Big<D>(params.total_rate());
  const Big<D> q = Big<D>(params.mu()) / Big<D>(params.total_rate());
  // Classical pgf in v = 1-u and w = exp(-(lambda+mu)s):
  //   [q(1-w) + (p+qw) v]^M * [(q+pw) + p(1-w) v]^(N-M)
  const Factor<D> initial{q, -q, p, q};
  const Factor<D> newborn{q, p, p, -p};

  ExpSumTable<D> scratch;
  if (exec == Exec::Parallel) scratch = g;
  int deg = 0;
  for (int i = 0; i < N; ++i) {
    const auto& f = i < M ? initial : newborn;
    if (exec == Exec::Parallel) {
      multiply_parallel<D>(g, scratch, deg, deg, f);
    } else {
      multiply_serial<D>(g, deg, deg, f);
    }
    ++deg;
  }
  return g;
}

template <unsigned D>
ExpSumTable<D> pure_birth_table(const ProcessParams& params) {
  // p_n = C(N-M, N-n) sum_{m=M}^{n} C(n-M, m-M) (-1)^{n-m} E(-lambda (N-m) t^nu)
  const int N = params.N();
  const int M = params.M();
  ExpSumTable<D> g;
  g.rows = N + 1;
  g.cols = N - M + 1;
  g.rate = params.lambda();
  g.c.assign(static_cast<std::size_t>(g.rows) * g.cols, Big<D>(0));
  for (int n = M; n <= N; ++n) {
    const Big<D> outer = binomial<D>(N - M, N - n);
    for (int m = M; m <= n; ++m) {
      Big<D> term = outer * binomial<D>(n - M, m - M);
      if ((n - m) % 2 != 0) term = -term;
      g.at(n, N - m) = term;
    }
  }
  return g;
}

template <unsigned D>
ExpSumTable<D> extinction_table(const ProcessParams& params) {
  // (mu/(lambda+mu))^N (lambda/mu)^r = q^{N-r} p^r, which also covers lambda = 0
  // (0^0 = 1) without dividing by mu.
  const int N = params.N();
  const int M = params.M();
  ExpSumTable<D> g;
  g.rows = 1;
  g.cols = N + 1;
  g.rate = params.total_rate();
  g.c.assign(static_cast<std::size_t>(g.cols), Big<D>(0));
  const Big<D> p = Big<D>(params.lambda()) / Big<D>(params.total_rate());
  const Big<D> q = Big<D>(params.mu()) / Big<D>(params.total_rate());
  Big<D> p_pow = 1;
  for (int r = 0; r <= N - M; ++r) {
    const Big<D> outer = binomial<D>(N - M, r) * p_pow * bmp::pow(q, N - r);
    for (int h = 0; h <= M; ++h) {
      Big<D> term = outer * binomial<D>(M, h);
      if (h % 2 != 0) term = -term;
      g.at(0, r + h) += term;
    }
    p_pow *= p;
  }
  return g;
}

template <unsigned D>
std::vector<double> evaluate_table(const ExpSumTable<D>& table, double nu, double t, Exec exec) {
  using Real = Big<D>;
  const int cols = table.cols;
  const Real a = Real(table.rate) * bmp::pow(Real(t), Real(nu));
  const MittagLefflerNeg<D> ml(nu, 1.0, static_cast<double>(a) * (cols - 1));

  std::vector<Real> e(cols);
  std::vector<double> out(table.rows);
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (int k = 0; k < cols; ++k) e[k] = ml(a * k);
#pragma omp parallel for schedule(static)
    for (int n = 0; n < table.rows; ++n) {
      Real acc = 0;
      for (int k = 0; k < cols; ++k) acc += table.at(n, k) * e[k];
      out[n] = static_cast<double>(acc);
    }
  } else {
    for (int k = 0; k < cols; ++k) e[k] = ml(a * k);
    for (int n = 0; n < table.rows; ++n) {
      Real acc = 0;
      for (int k = 0; k < cols; ++k) acc += table.at(n, k) * e[k];
      out[n] = static_cast<double>(acc);
    }
  }
  return out;
}

double coefficient_mass_log10(const ProcessParams& params, TableKind kind) {
  const double N = params.N();
  const double M = params.M();
  const double p = params.lambda() / params.total_rate();
  const double q = params.mu() / params.total_rate();
  switch (kind) {
    case TableKind::General:
      return (N - M) * std::log10(1.0 + 2.0 * p) + M * std::log10(1.0 + 2.0 * q);
    case TableKind::PureBirth:
      return (N - M) * std::log10(3.0);
    case TableKind::Extinction:
      return std::max(0.0, M * std::log10(2.0 * q));
  }
  return 0.0;
}

namespace {

template <unsigned D>
AnyTable build(const ProcessParams& params, TableKind kind, Exec exec) {
  switch (kind) {
    case TableKind::General:
      return general_table<D>(params, exec);
    case TableKind::PureBirth:
      return pure_birth_table<D>(params);
    case TableKind::Extinction:
      return extinction_table<D>(params);
  }
  throw DomainError("unknown table kind");
}

}  // namespace

AnyTable make_table(const ProcessParams& params, TableKind kind, Exec exec) {
  const double needed = coefficient_mass_log10(params, kind) + 20.0;
  if (needed <= 32) return build<32>(params, kind, exec);
  if (needed <= 64) return build<64>(params, kind, exec);
  if (needed <= 128) return build<128>(params, kind, exec);
  throw DomainError("closed-form pmf needs " + std::to_string(static_cast<int>(needed)) +
                    " digits; reduce N");
}

unsigned table_digits(const AnyTable& table) {
  return std::visit(
      []<unsigned D>(const ExpSumTable<D>&) { return D; }, table);
}

std::vector<double> evaluate(const AnyTable& table, double nu, double t, Exec exec) {
  return std::visit([&](const auto& tab) { return evaluate_table(tab, nu, t, exec); }, table);
}

#define FRACBIN_INSTANTIATE(D)                                                            \
  template ExpSumTable<D> general_table<D>(const ProcessParams&, Exec);                   \
  template ExpSumTable<D> pure_birth_table<D>(const ProcessParams&);                      \
  template ExpSumTable<D> extinction_table<D>(const ProcessParams&);                      \
  template std::vector<double> evaluate_table<D>(const ExpSumTable<D>&, double, double, Exec);

FRACBIN_INSTANTIATE(32)
FRACBIN_INSTANTIATE(64)
FRACBIN_INSTANTIATE(128)

#undef FRACBIN_INSTANTIATE

}  // namespace fracbin::precise
