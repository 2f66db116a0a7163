#include "gabinv/zak.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

namespace gabinv {

ZakSplit ZakSplit::make(std::int64_t L, std::int64_t N) {
  if (L <= 0 || N <= 0) throw Error("L and N must be positive");
  if (L % N != 0) throw Error("N must divide L");
  return ZakSplit{L, N, L / N};
}

ZakGrid::ZakGrid(GridShape shape, ComplexVector values, double tau)
    : shape_(std::move(shape)), values_(std::move(values)), tau_(tau) {
  if (shape_.rank() % 2 != 0 || shape_.rank() == 0) throw Error("Zak grid needs an even number of axes");
  if (values_.size() != shape_.size()) throw Error("Zak grid value count does not match its resolution");
  if (tau_ < 0) throw Error("zero tolerance must be nonnegative");
}

ZakGrid ZakGrid::finite(const ZakSplit& split, ComplexVector values, double tau) {
  ZakGrid g(GridShape({split.N, split.M}), std::move(values), tau);
  g.split_ = split;
  return g;
}

ZakGrid ZakGrid::zeros_like(const ZakGrid& other) {
  ZakGrid g = other;
  std::fill(g.values_.begin(), g.values_.end(), Complex{});
  return g;
}

Complex ZakGrid::extend(const Node& node) const {
  Node windings;
  const Node cell = shape_.wrap(node, &windings);
  Complex v = values_[shape_.flat(cell)];
  const std::size_t d = dim();
  for (std::size_t i = 0; i < d; ++i) {
    if (windings[i] == 0) continue;
    v *= unit_phase(windings[i] * cell[d + i], shape_.resolution()[d + i]);
  }
  return v;
}

Complex ZakGrid::extend(const RationalVector& point) const { return extend(shape_.to_grid(point)); }

double ZakGrid::max_abs() const {
  double m = 0;
  for (const auto& v : values_) m = std::max(m, std::abs(v));
  return m;
}

std::vector<bool> ZakGrid::support() const {
  const double threshold = tau_ * max_abs();
  std::vector<bool> out(values_.size(), false);
  for (std::size_t i = 0; i < values_.size(); ++i) out[i] = std::abs(values_[i]) > threshold && values_[i] != Complex{};
  return out;
}

std::string kind_name(WindowSpec::Kind kind) {
  switch (kind) {
    case WindowSpec::Kind::indicator: return "indicator";
    case WindowSpec::Kind::gaussian: return "gaussian";
    case WindowSpec::Kind::finite_vector: return "finite_vector";
    case WindowSpec::Kind::explicit_zak: return "explicit_zak";
  }
  return "unknown";
}

ZakGrid finite_zak(const ComplexVector& f, const ZakSplit& split, double tau) {
  if (static_cast<std::int64_t>(f.size()) != split.L) throw Error("vector length does not match L");
  const auto N = split.N, M = split.M;
  ComplexVector twiddle(static_cast<std::size_t>(M));
  for (std::int64_t j = 0; j < M; ++j) twiddle[static_cast<std::size_t>(j)] = unit_phase(-j, M);
  const double scale = 1.0 / std::sqrt(static_cast<double>(M));
  ComplexVector z(static_cast<std::size_t>(split.L));
  for (std::int64_t x = 0; x < N; ++x)
    for (std::int64_t w = 0; w < M; ++w) {
      Complex acc{};
      for (std::int64_t k = 0; k < M; ++k) acc += f[static_cast<std::size_t>(x + k * N)] * twiddle[static_cast<std::size_t>((k * w) % M)];
      z[static_cast<std::size_t>(x * M + w)] = acc * scale;
    }
  return ZakGrid::finite(split, std::move(z), tau);
}

ComplexVector inverse_finite_zak(const ZakGrid& grid) {
  if (!grid.is_finite()) throw Error("inverse Zak transform needs a finite-mode grid");
  const auto& s = *grid.split();
  const auto N = s.N, M = s.M;
  ComplexVector twiddle(static_cast<std::size_t>(M));
  for (std::int64_t j = 0; j < M; ++j) twiddle[static_cast<std::size_t>(j)] = unit_phase(j, M);
  const double scale = 1.0 / std::sqrt(static_cast<double>(M));
  ComplexVector f(static_cast<std::size_t>(s.L));
  for (std::int64_t x = 0; x < N; ++x)
    for (std::int64_t k = 0; k < M; ++k) {
      Complex acc{};
      for (std::int64_t w = 0; w < M; ++w) acc += grid[static_cast<std::size_t>(x * M + w)] * twiddle[static_cast<std::size_t>((k * w) % M)];
      f[static_cast<std::size_t>(x + k * N)] = acc * scale;
    }
  return f;
}

ZakGrid zak_shift_image(const ZakGrid& grid, const Node& shift) {
  const auto& shape = grid.shape();
  if (shift.size() != shape.rank()) throw Error("shift dimension mismatch");
  const std::size_t d = grid.dim();
  ZakGrid out = ZakGrid::zeros_like(grid);
  Node src(shape.rank());
  for (std::size_t f = 0; f < shape.size(); ++f) {
    const Node node = shape.node(f);
    Complex phase{1.0, 0.0};
    for (std::size_t i = 0; i < d; ++i) {
      const auto P = shape.resolution()[i], Q = shape.resolution()[d + i];
      if (shift[d + i] != 0 && node[i] != 0) phase *= unit_phase(shift[d + i] * node[i], P * Q);
    }
    for (std::size_t i = 0; i < shape.rank(); ++i) src[i] = node[i] - shift[i];
    out[f] = phase * grid.extend(src);
  }
  return out;
}

double gaussian_value(double sigma, double t) {
  return std::pow(2.0, 0.25) / std::sqrt(sigma) * std::exp(-std::numbers::pi * t * t / (sigma * sigma));
}

std::int64_t gaussian_truncation(double sigma) {
  if (!(sigma > 0) || !std::isfinite(sigma)) throw Error("sigma must be positive");
  // Smallest K with 2 * sum_{k > K} e^{-pi (k-1)^2 / sigma^2} < 1e-15.
  for (std::int64_t K = 1; K < 100000; ++K) {
    double tail = 0;
    for (std::int64_t k = K + 1;; ++k) {
      const double term = std::exp(-std::numbers::pi * static_cast<double>((k - 1) * (k - 1)) / (sigma * sigma));
      tail += term;
      if (term < 1e-30) break;
    }
    if (2 * tail < 1e-15) return K;
  }
  throw Error("gaussian truncation tolerance unreachable");
}

namespace {

// One-dimensional continuous Zak samples, indexed [X * Q + W].
ComplexVector zak_1d(const WindowSpec& spec, std::int64_t P, std::int64_t Q) {
  ComplexVector out(static_cast<std::size_t>(P * Q));
  if (spec.kind == WindowSpec::Kind::indicator) {
    if (spec.width <= 0) throw Error("indicator width must be positive");
    const double amp = spec.width == 1 ? 1.0 : 1.0 / std::sqrt(spec.width.get_d());
    for (std::int64_t X = 0; X < P; ++X) {
      const Rational x(X, P);
      for (std::int64_t W = 0; W < Q; ++W) {
        Complex acc{};
        for (std::int64_t k = 0; Rational(x + k) < spec.width; ++k) acc += unit_phase(-k * W, Q);
        out[static_cast<std::size_t>(X * Q + W)] = amp * acc;
      }
    }
    return out;
  }
  const std::int64_t K = gaussian_truncation(spec.sigma);
  for (std::int64_t X = 0; X < P; ++X) {
    const double x = static_cast<double>(X) / static_cast<double>(P);
    for (std::int64_t W = 0; W < Q; ++W) {
      Complex acc{};
      for (std::int64_t k = -K; k <= K; ++k) acc += gaussian_value(spec.sigma, x + static_cast<double>(k)) * unit_phase(-k * W, Q);
      out[static_cast<std::size_t>(X * Q + W)] = acc;
    }
  }
  return out;
}

}  // namespace

ZakGrid analytic_zak(const WindowSpec& spec, std::int64_t P, std::int64_t Q, double tau) {
  if (P < 1 || Q < 1) throw Error("grid resolution must be positive");
  switch (spec.kind) {
    case WindowSpec::Kind::explicit_zak: {
      if (!spec.zak) throw Error("explicit_zak window without grid");
      const auto& r = spec.zak->shape().resolution();
      const std::size_t d = spec.zak->dim();
      for (std::size_t i = 0; i < d; ++i)
        if (r[i] != P || r[d + i] != Q) throw Error("explicit Zak grid resolution does not match the request");
      ZakGrid g = *spec.zak;
      g.set_tau(tau);
      return g;
    }
    case WindowSpec::Kind::finite_vector: {
      if (P * Q != spec.L) throw Error("finite window needs P * Q = L");
      return finite_zak(spec.values, ZakSplit::make(spec.L, P), tau);
    }
    case WindowSpec::Kind::indicator:
    case WindowSpec::Kind::gaussian: break;
  }
  const ComplexVector one = zak_1d(spec, P, Q);
  if (spec.dim == 1) return ZakGrid(GridShape({P, Q}), one, tau);
  if (spec.dim != 2) throw Error("analytic windows support d = 1 or d = 2");
  const GridShape shape({P, P, Q, Q});
  ComplexVector values(shape.size());
  for (std::size_t f = 0; f < shape.size(); ++f) {
    const Node n = shape.node(f);
    values[f] = one[static_cast<std::size_t>(n[0] * Q + n[2])] * one[static_cast<std::size_t>(n[1] * Q + n[3])];
  }
  return ZakGrid(shape, std::move(values), tau);
}

WindowSpec rescale(const WindowSpec& spec, const Rational& alpha) {
  if (alpha <= 0) throw Error("scale factor must be positive");
  if (alpha == 1) return spec;
  WindowSpec out = spec;
  switch (spec.kind) {
    case WindowSpec::Kind::indicator:
      out.width = spec.width / alpha;
      return out;
    case WindowSpec::Kind::gaussian:
      out.sigma = spec.sigma / alpha.get_d();
      return out;
    case WindowSpec::Kind::finite_vector: {
      const double before = norm(spec.values);
      if (is_integer(alpha)) {
        const std::int64_t k = to_int64(alpha);
        if (spec.L % k != 0) throw Error("scale factor must divide L for decimation");
        out.L = spec.L / k;
        out.values.assign(static_cast<std::size_t>(out.L), Complex{});
        for (std::int64_t n = 0; n < out.L; ++n) out.values[static_cast<std::size_t>(n)] = spec.values[static_cast<std::size_t>(n * k)];
        const double after = norm(out.values);
        if (after > 0)
          for (auto& v : out.values) v *= before / after;
        return out;
      }
      if (alpha.get_num() == 1) {
        const std::int64_t k = to_int64(Rational(alpha.get_den()));
        out.L = spec.L * k;
        out.values.assign(static_cast<std::size_t>(out.L), Complex{});
        const double amp = 1.0 / std::sqrt(static_cast<double>(k));
        for (std::int64_t n = 0; n < out.L; ++n) out.values[static_cast<std::size_t>(n)] = amp * spec.values[static_cast<std::size_t>(n / k)];
        return out;
      }
      throw Error("finite windows rescale only by an integer or its reciprocal");
    }
    case WindowSpec::Kind::explicit_zak: break;
  }
  throw Error("explicit Zak windows cannot be rescaled");
}

std::string export_csv(const ZakGrid& grid) {
  if (grid.dim() != 1) throw Error("CSV export supports d = 1 grids");
  const auto& shape = grid.shape();
  std::ostringstream os;
  os << "x,omega,re,im\n";
  char buf[128];
  for (std::size_t f = 0; f < shape.size(); ++f) {
    const Node n = shape.node(f);
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", static_cast<double>(n[0]) / static_cast<double>(shape.resolution()[0]),
                  static_cast<double>(n[1]) / static_cast<double>(shape.resolution()[1]), grid[f].real(), grid[f].imag());
    os << buf;
  }
  return os.str();
}

double norm(const ComplexVector& v) {
  double s = 0;
  for (const auto& z : v) s += std::norm(z);
  return std::sqrt(s);
}

double grid_norm(const ZakGrid& g) { return norm(g.values()); }

}  // namespace gabinv
