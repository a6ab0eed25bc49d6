#pragma once

#include <Eigen/Sparse>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "trfem/materials.hpp"

namespace trfem {

enum class Family { Bar1D, AxisymmetricRod, Hex3D };
enum class LoadDirection { Tension, Compression };

struct Mesh {
  std::vector<Vector3> nodes;
  std::vector<int> conn;  // flattened connectivity
  int nodes_per_element = 0;

  int n_elements() const {
    return nodes_per_element == 0
               ? 0
               : static_cast<int>(conn.size()) / nodes_per_element;
  }
  std::span<const int> element(int e) const {
    return {conn.data() +
                static_cast<std::size_t>(e) *
                    static_cast<std::size_t>(nodes_per_element),
            static_cast<std::size_t>(nodes_per_element)};
  }
};

/// One of the problem families: mesh, material, homogeneous Dirichlet
/// constraints (encoded as dof_index = -1) and a unit load pattern on the
/// free DOFs. The load scale passed to assemble() multiplies the pattern;
/// what "1.0" means is set by the builder (see each builder's notes).
struct Problem {
  Family family = Family::Bar1D;
  Mesh mesh;
  MaterialParams material;
  int dofs_per_node = 1;
  std::vector<int> dof_index;  // node*dofs_per_node + comp -> free id or -1
  int n_free = 0;
  Eigen::VectorXd load_pattern;     // free-sized
  std::vector<int> traction_dofs;   // free DOFs with a nonzero pattern entry
  std::vector<int> free_dof_node;   // free DOF -> owning node
  std::vector<std::vector<int>> node_elements;
  int gauss_per_element = 2;
  std::string description;

  // hex quadrature caches, per element per Gauss point
  std::vector<double> hex_gradN;    // [e][g][a][dim]
  std::vector<double> hex_wdetJ;    // [e][g]
  std::vector<Vector3> gauss_axis;  // [e][g] reference load-axis direction

  int n_nodes() const { return static_cast<int>(mesh.nodes.size()); }
  int dof(int node, int comp = 0) const {
    return dof_index[static_cast<std::size_t>(node * dofs_per_node + comp)];
  }
};

/// Unit-length bar of linear two-node elements, one axial DOF per node,
/// left end fixed. Element kinematics are the volume-preserving uniaxial
/// family, internal force from the closed-form uniaxial stress. Load
/// scale: force applied at the right end node.
Problem build_bar_1d(int n_elements, const MaterialParams& material);

/// Unit-length rod of linear two-node elements with two DOFs per node:
/// axial displacement and lateral stretch. Axial rows balance P11, lateral
/// rows drive the lateral stress to zero. Left end axially fixed. Load
/// scale: axial force at the right end node.
Problem build_axisymmetric_rod(int n_elements, const MaterialParams& material);

/// Unit cube of trilinear hexahedra under uniform pressure on the top
/// face (applied on the reference configuration, not a follower load).
/// Bottom face fixed in z, one x-normal and one y-normal face fixed in x
/// and y to remove rigid modes. Load scale: pressure magnitude.
Problem build_hex_cube(int n_per_edge, const MaterialParams& material,
                       LoadDirection direction);

/// Thick-walled tube, inner radius 0.7, outer radius 1, length 5, meshed
/// with nr x nc x na hexahedra (radial, circumferential, axial). All DOFs
/// fixed at the z = 0 end; consistent nodal forces from a normal pressure
/// on the inner surface. Load scale: internal pressure.
Problem build_tube(const VWParams& material, int nr, int nc, int na);

/// 10 x 10 x 10 cube, bottom face fully fixed, downward consistent nodal
/// forces on a centred square patch of the top face covering
/// patch_fraction of its area. Load scale: total applied force.
Problem build_indentation(const MRParams& material, int n_per_edge,
                          double patch_fraction);

struct AssembledSystem {
  Eigen::SparseMatrix<double> K;  // d f_int / d u on the free DOFs
  Eigen::VectorXd f_int;
  Eigen::VectorXd f_ext;
  std::vector<double> gauss_stretches;  // [e][g] load-axis stretches
};

/// Residual ingredients at state u (free DOFs) under the given load scale.
/// Throws NonPositiveJacobian (with element id) or NegativeStretch when a
/// Gauss point reaches an inadmissible state.
AssembledSystem assemble(const Problem& p, const Eigen::VectorXd& u,
                         double load);

/// Mean Gauss stretch per element.
std::vector<double> element_mean_stretches(const Problem& p,
                                           const AssembledSystem& sys);

/// Average of the adjacent elements' mean stretches at a node.
double nodal_stretch_at(const Problem& p,
                        const std::vector<double>& element_means, int node);

/// Plain-text node/element listing for debugging.
void dump_mesh(const Problem& p, std::ostream& os);

}  // namespace trfem
