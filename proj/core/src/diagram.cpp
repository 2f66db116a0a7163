#include "gabinv/diagram.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace gabinv {

namespace {

std::int64_t lcm_of_row(const RationalMatrix& m, std::size_t row) {
  Integer l = 1;
  for (std::size_t c = 0; c < m.cols(); ++c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(row, c).get_den_mpz_t());
  return l.get_si();
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

std::vector<RationalVector> tilde_generators(const RationalLattice& lattice, const RationalLattice& tilde) {
  std::vector<RationalVector> gens;
  RationalLattice cur = lattice;
  const auto reps = quotient_cosets(tilde, lattice).representatives;
  for (std::size_t k = 1; k < reps.size(); ++k) {
    if (cur.contains(reps[k])) continue;
    gens.push_back(reps[k]);
    cur = join(cur, std::span<const RationalVector>(&reps[k], 1));
  }
  if (gens.empty()) gens.push_back(RationalVector(lattice.dim(), Rational(0)));
  return gens;
}

LatticeDiagram build_diagram(const RationalLattice& lattice, const RationalLattice& tilde) {
  if (lattice.dim() != 2) throw Error("diagrams support d = 1 lattices only");
  const auto z2 = RationalLattice::integer(2);
  if (!sublattice_of(lattice, tilde) || !sublattice_of(tilde, z2)) throw Error("diagram needs lambda <= lambda-tilde <= Z^2");
  LatticeDiagram d{lattice, tilde, lattice.basis()(0, 0), lattice.basis()(1, 1), {}, {}, {}, {}, {}, {}};
  for (std::int64_t y = 0; Rational(y) <= d.height; ++y)
    for (std::int64_t x = 0; Rational(x) <= d.width; ++x)
      if (tilde.contains({x, y})) d.tilde_nodes.push_back({x, y});
  d.generators = tilde_generators(lattice, tilde);

  const auto adj = adjoint(lattice);
  const auto adj_tilde = adjoint(tilde);
  d.grid = GridShape({lcm_of_row(adj.basis(), 0), lcm_of_row(adj.basis(), 1)});
  const auto P = d.grid.resolution()[0], Q = d.grid.resolution()[1];
  for (std::int64_t j = 0; j <= Q; ++j)
    for (std::int64_t i = 0; i <= P; ++i) {
      const RationalVector p{Rational(i, P), Rational(j, Q)};
      RationalVector pc = p;
      for (auto& q : pc) q.canonicalize();
      if (!adj.contains(pc)) continue;
      d.adjoint_nodes.push_back(pc);
      d.adjoint_filled.push_back(adj_tilde.contains(pc));
    }
  const auto fam = build_masks(lattice, tilde, d.grid);
  for (std::size_t f = 0; f < d.grid.size(); ++f)
    if (fam.label[f] == 0) d.shaded_cells.push_back(d.grid.node(f));
  return d;
}

std::string render_svg(const LatticeDiagram& d) {
  const double s1 = 50.0, s2 = 160.0, margin = 20.0, gap = 40.0, r = 4.0;
  const double w1 = d.width.get_d(), h1 = d.height.get_d();
  const double left_w = (w1 + 0.46) * s1, left_h = (h1 + 0.46) * s1;
  const double right_w = 1.46 * s2, right_h = 1.46 * s2;
  const double total_w = 2 * margin + left_w + gap + right_w;
  const double total_h = 2 * margin + std::max(left_h, right_h) + 30.0;
  const double base_y = margin + std::max(left_h, right_h);
  // Panel origins (the image of (0,0)) in SVG coordinates.
  const double ox1 = margin + 0.23 * s1, oy1 = base_y - 0.23 * s1;
  const double ox2 = margin + left_w + gap + 0.23 * s2, oy2 = base_y - 0.23 * s2;
  const auto X1 = [&](double x) { return num(ox1 + x * s1); };
  const auto Y1 = [&](double y) { return num(oy1 - y * s1); };
  const auto X2 = [&](double x) { return num(ox2 + x * s2); };
  const auto Y2 = [&](double y) { return num(oy2 - y * s2); };

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(total_w) << "\" height=\"" << num(total_h)
     << "\" viewBox=\"0 0 " << num(total_w) << ' ' << num(total_h) << "\">\n";
  os << "<title>lambda " << d.lattice.to_string() << " tilde " << d.tilde.to_string() << "</title>\n";

  os << "<g id=\"tilde\">\n";
  for (std::int64_t x = 0; x <= static_cast<std::int64_t>(w1); ++x)
    os << "<line x1=\"" << X1(static_cast<double>(x)) << "\" y1=\"" << Y1(-0.23) << "\" x2=\"" << X1(static_cast<double>(x)) << "\" y2=\""
       << Y1(h1 + 0.23) << "\" stroke=\"#b3b3b3\" stroke-width=\"1\"/>\n";
  for (std::int64_t y = 0; y <= static_cast<std::int64_t>(h1); ++y)
    os << "<line x1=\"" << X1(-0.23) << "\" y1=\"" << Y1(static_cast<double>(y)) << "\" x2=\"" << X1(w1 + 0.23) << "\" y2=\""
       << Y1(static_cast<double>(y)) << "\" stroke=\"#b3b3b3\" stroke-width=\"1\"/>\n";
  os << "<rect x=\"" << X1(0) << "\" y=\"" << Y1(1) << "\" width=\"" << num(s1) << "\" height=\"" << num(s1)
     << "\" fill=\"none\" stroke=\"#000000\" stroke-width=\"2.5\"/>\n";
  for (const auto& p : d.tilde_nodes)
    os << "<circle cx=\"" << X1(p[0].get_d()) << "\" cy=\"" << Y1(p[1].get_d()) << "\" r=\"" << num(r)
       << "\" fill=\"#000000\" stroke=\"#000000\"/>\n";
  for (const auto& g : d.generators)
    os << "<circle class=\"generator\" cx=\"" << X1(g[0].get_d()) << "\" cy=\"" << Y1(g[1].get_d()) << "\" r=\"" << num(r)
       << "\" fill=\"#ff0000\" stroke=\"#000000\"/>\n";
  os << "<text x=\"" << X1(w1 / 2) << "\" y=\"" << num(base_y + 22) << "\" text-anchor=\"middle\" font-family=\"serif\" font-size=\"16\">tilde</text>\n";
  os << "</g>\n";

  const auto P = d.grid.resolution()[0], Q = d.grid.resolution()[1];
  os << "<g id=\"adjoint\">\n";
  for (const auto& c : d.shaded_cells)
    os << "<rect class=\"b0\" x=\"" << X2(static_cast<double>(c[0]) / P) << "\" y=\"" << Y2(static_cast<double>(c[1] + 1) / Q)
       << "\" width=\"" << num(s2 / P) << "\" height=\"" << num(s2 / Q) << "\" fill=\"#b3b3ff\" stroke=\"none\"/>\n";
  for (int k = 0; k <= 1; ++k) {
    os << "<line x1=\"" << X2(k) << "\" y1=\"" << Y2(-0.23) << "\" x2=\"" << X2(k) << "\" y2=\"" << Y2(1.23)
       << "\" stroke=\"#b3b3b3\" stroke-width=\"1\"/>\n";
    os << "<line x1=\"" << X2(-0.23) << "\" y1=\"" << Y2(k) << "\" x2=\"" << X2(1.23) << "\" y2=\"" << Y2(k)
       << "\" stroke=\"#b3b3b3\" stroke-width=\"1\"/>\n";
  }
  os << "<rect x=\"" << X2(0) << "\" y=\"" << Y2(1) << "\" width=\"" << num(s2) << "\" height=\"" << num(s2)
     << "\" fill=\"none\" stroke=\"#000000\" stroke-width=\"2.5\"/>\n";
  for (std::size_t k = 0; k < d.adjoint_nodes.size(); ++k) {
    const auto& p = d.adjoint_nodes[k];
    os << "<circle cx=\"" << X2(p[0].get_d()) << "\" cy=\"" << Y2(p[1].get_d()) << "\" r=\"" << num(r) << "\" fill=\""
       << (d.adjoint_filled[k] ? "#000000" : "#ffffff") << "\" stroke=\"#000000\"/>\n";
  }
  os << "<text x=\"" << X2(0.5) << "\" y=\"" << num(base_y + 22)
     << "\" text-anchor=\"middle\" font-family=\"serif\" font-size=\"16\">adjoint of tilde</text>\n";
  os << "</g>\n</svg>\n";
  return os.str();
}

std::string render_ascii(const LatticeDiagram& d) {
  std::ostringstream os;
  const auto w = to_int64(d.width), h = to_int64(d.height);
  const auto is_gen = [&](std::int64_t x, std::int64_t y) {
    return std::any_of(d.generators.begin(), d.generators.end(), [&](const RationalVector& g) { return g[0] == x && g[1] == y; });
  };
  const auto in_tilde = [&](std::int64_t x, std::int64_t y) {
    return std::any_of(d.tilde_nodes.begin(), d.tilde_nodes.end(), [&](const RationalVector& g) { return g[0] == x && g[1] == y; });
  };
  os << "tilde " << d.tilde.to_string() << " (generators marked @)\n";
  for (std::int64_t y = h; y >= 0; --y) {
    for (std::int64_t x = 0; x <= w; ++x) {
      if (x) os << "   ";
      os << (is_gen(x, y) ? "@" : in_tilde(x, y) ? "●" : "·");
    }
    os << '\n';
  }
  const auto P = d.grid.resolution()[0], Q = d.grid.resolution()[1];
  std::vector<bool> shaded(d.grid.size(), false);
  for (const auto& c : d.shaded_cells) shaded[d.grid.flat(c)] = true;
  os << "adjoint " << adjoint(d.tilde).to_string() << " (B0 cells #)\n";
  const auto node_glyph = [&](std::int64_t i, std::int64_t j) -> std::string {
    RationalVector p{Rational(i, P), Rational(j, Q)};
    for (auto& q : p) q.canonicalize();
    for (std::size_t k = 0; k < d.adjoint_nodes.size(); ++k)
      if (d.adjoint_nodes[k] == p) return d.adjoint_filled[k] ? "●" : "○";
    return "·";
  };
  for (std::int64_t j = Q; j >= 0; --j) {
    for (std::int64_t i = 0; i <= P; ++i) {
      if (i) os << "   ";
      os << node_glyph(i, j);
    }
    os << '\n';
    if (j == 0) break;
    for (std::int64_t i = 0; i < P; ++i) os << ' ' << (shaded[d.grid.flat({i, j - 1})] ? "###" : "   ");
    os << '\n';
  }
  return os.str();
}

}  // namespace gabinv
