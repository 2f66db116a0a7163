#pragma once

#include <string>
#include <vector>

#include "gabinv/invariance.hpp"
#include "gabinv/lattice.hpp"

namespace gabinv {

/// Geometry of the two-panel lattice figure for a chain lattice <= tilde <= Z^2.
struct LatticeDiagram {
  RationalLattice lattice;
  RationalLattice tilde;
  Rational width;   // left panel shows [0,width] x [0,height]
  Rational height;
  std::vector<RationalVector> tilde_nodes;   // tilde points in the left panel
  std::vector<RationalVector> generators;    // highlighted generators of tilde over lattice
  GridShape grid;                            // right-panel grid of the adjoint lattice
  std::vector<RationalVector> adjoint_nodes;        // adjoint(lattice) points in [0,1]^2
  std::vector<bool> adjoint_filled;                 // point also lies in adjoint(tilde)
  std::vector<Node> shaded_cells;                   // lower-left corners of the B^(0) cells, grid units
};

LatticeDiagram build_diagram(const RationalLattice& lattice, const RationalLattice& tilde);

/// Greedy generators: lexicographically first coset representatives not yet in the running join.
std::vector<RationalVector> tilde_generators(const RationalLattice& lattice, const RationalLattice& tilde);

std::string render_svg(const LatticeDiagram& diagram);
std::string render_ascii(const LatticeDiagram& diagram);

}  // namespace gabinv
