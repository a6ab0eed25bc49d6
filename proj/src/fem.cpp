#include "trfem/fem.hpp"

#include <array>
#include <cmath>

#include "trfem/csv.hpp"
#include "trfem/transforms.hpp"

namespace trfem {

namespace {

constexpr double kGauss1d = 0.57735026918962576451;  // 1/sqrt(3)

// Reference coordinates of the trilinear hexahedron.
constexpr double kHexXi[8] = {-1, 1, 1, -1, -1, 1, 1, -1};
constexpr double kHexEta[8] = {-1, -1, 1, 1, -1, -1, 1, 1};
constexpr double kHexZeta[8] = {-1, -1, -1, -1, 1, 1, 1, 1};

void hex_shape(double xi, double eta, double zeta, double N[8],
               double dN[8][3]) {
  for (int a = 0; a < 8; ++a) {
    const double sx = kHexXi[a], sy = kHexEta[a], sz = kHexZeta[a];
    N[a] = 0.125 * (1 + sx * xi) * (1 + sy * eta) * (1 + sz * zeta);
    dN[a][0] = 0.125 * sx * (1 + sy * eta) * (1 + sz * zeta);
    dN[a][1] = 0.125 * (1 + sx * xi) * sy * (1 + sz * zeta);
    dN[a][2] = 0.125 * (1 + sx * xi) * (1 + sy * eta) * sz;
  }
}

struct GaussPoint3 {
  double xi, eta, zeta;
};

std::array<GaussPoint3, 8> hex_gauss_points() {
  std::array<GaussPoint3, 8> pts;
  int g = 0;
  for (int k = 0; k < 2; ++k)
    for (int j = 0; j < 2; ++j)
      for (int i = 0; i < 2; ++i)
        pts[g++] = {(2 * i - 1) * kGauss1d, (2 * j - 1) * kGauss1d,
                    (2 * k - 1) * kGauss1d};
  return pts;
}

void finalize_dofs(Problem& p, const std::vector<bool>& fixed) {
  const int total = p.n_nodes() * p.dofs_per_node;
  p.dof_index.assign(static_cast<std::size_t>(total), -1);
  p.n_free = 0;
  for (int d = 0; d < total; ++d) {
    if (!fixed[static_cast<std::size_t>(d)]) {
      p.dof_index[static_cast<std::size_t>(d)] = p.n_free++;
    }
  }
  p.free_dof_node.assign(static_cast<std::size_t>(p.n_free), -1);
  for (int d = 0; d < total; ++d) {
    const int f = p.dof_index[static_cast<std::size_t>(d)];
    if (f >= 0) p.free_dof_node[static_cast<std::size_t>(f)] = d / p.dofs_per_node;
  }
  p.load_pattern = Eigen::VectorXd::Zero(p.n_free);
}

void finalize_adjacency(Problem& p) {
  p.node_elements.assign(static_cast<std::size_t>(p.n_nodes()), {});
  for (int e = 0; e < p.mesh.n_elements(); ++e) {
    for (int n : p.mesh.element(e)) {
      p.node_elements[static_cast<std::size_t>(n)].push_back(e);
    }
  }
}

void finalize_traction(Problem& p) {
  p.traction_dofs.clear();
  for (int d = 0; d < p.n_free; ++d) {
    if (p.load_pattern[d] != 0.0) p.traction_dofs.push_back(d);
  }
}

// Precomputes reference-configuration shape gradients and quadrature
// weights for all hex elements, plus the per-Gauss load-axis direction.
void finalize_hex_caches(Problem& p, bool radial_axis) {
  const auto pts = hex_gauss_points();
  const int ne = p.mesh.n_elements();
  p.gauss_per_element = 8;
  p.hex_gradN.assign(static_cast<std::size_t>(ne) * 8 * 8 * 3, 0.0);
  p.hex_wdetJ.assign(static_cast<std::size_t>(ne) * 8, 0.0);
  p.gauss_axis.assign(static_cast<std::size_t>(ne) * 8, Vector3::UnitZ());
  double N[8];
  double dN[8][3];
  for (int e = 0; e < ne; ++e) {
    const auto conn = p.mesh.element(e);
    for (int g = 0; g < 8; ++g) {
      hex_shape(pts[static_cast<std::size_t>(g)].xi,
                pts[static_cast<std::size_t>(g)].eta,
                pts[static_cast<std::size_t>(g)].zeta, N, dN);
      Tensor2 J = Tensor2::Zero();  // dX/dxi
      Vector3 Xg = Vector3::Zero();
      for (int a = 0; a < 8; ++a) {
        const Vector3& X = p.mesh.nodes[static_cast<std::size_t>(conn[a])];
        Xg += N[a] * X;
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j) J(i, j) += X[i] * dN[a][j];
      }
      const double detJ = J.determinant();
      if (!(detJ > 0.0)) {
        throw NonPositiveJacobian("mesh element with non-positive volume", e);
      }
      const Tensor2 Jinv = J.inverse();
      const std::size_t base =
          ((static_cast<std::size_t>(e) * 8) + static_cast<std::size_t>(g)) *
          8 * 3;
      for (int a = 0; a < 8; ++a) {
        // dN/dX = J^{-T} dN/dxi
        for (int i = 0; i < 3; ++i) {
          p.hex_gradN[base + static_cast<std::size_t>(a) * 3 +
                      static_cast<std::size_t>(i)] =
              Jinv(0, i) * dN[a][0] + Jinv(1, i) * dN[a][1] +
              Jinv(2, i) * dN[a][2];
        }
      }
      p.hex_wdetJ[static_cast<std::size_t>(e) * 8 +
                  static_cast<std::size_t>(g)] = detJ;  // unit Gauss weights
      if (radial_axis) {
        const double rr = std::hypot(Xg[0], Xg[1]);
        p.gauss_axis[static_cast<std::size_t>(e) * 8 +
                     static_cast<std::size_t>(g)] =
            Vector3(Xg[0] / rr, Xg[1] / rr, 0.0);
      }
    }
  }
}

// Consistent nodal forces of a unit pressure acting along `direction` on a
// bilinear quad (reference configuration), accumulated into the pattern.
// If direction is zero, the geometric normal (T1 x T2) orientation is used
// and `orient` fixes its sign.
void add_quad_pressure(Problem& p, const std::array<int, 4>& quad,
                       const Vector3& direction, const Vector3& orient) {
  static const double gp[2] = {-kGauss1d, kGauss1d};
  for (double xi : gp) {
    for (double eta : gp) {
      const double N[4] = {0.25 * (1 - xi) * (1 - eta),
                           0.25 * (1 + xi) * (1 - eta),
                           0.25 * (1 + xi) * (1 + eta),
                           0.25 * (1 - xi) * (1 + eta)};
      const double dXi[4] = {-0.25 * (1 - eta), 0.25 * (1 - eta),
                             0.25 * (1 + eta), -0.25 * (1 + eta)};
      const double dEta[4] = {-0.25 * (1 - xi), -0.25 * (1 + xi),
                              0.25 * (1 + xi), 0.25 * (1 - xi)};
      Vector3 t1 = Vector3::Zero(), t2 = Vector3::Zero();
      for (int a = 0; a < 4; ++a) {
        const Vector3& X = p.mesh.nodes[static_cast<std::size_t>(quad[a])];
        t1 += dXi[a] * X;
        t2 += dEta[a] * X;
      }
      Vector3 nda = t1.cross(t2);  // normal times area element
      Vector3 f;
      if (direction.isZero()) {
        if (nda.dot(orient) < 0.0) nda = -nda;
        f = nda;
      } else {
        f = nda.norm() * direction;
      }
      for (int a = 0; a < 4; ++a) {
        for (int c = 0; c < 3; ++c) {
          const int d = p.dof(quad[a], c);
          if (d >= 0) p.load_pattern[d] += N[a] * f[c];
        }
      }
    }
  }
}

MaterialParams as_variant(const VWParams& p) { return MaterialParams{p}; }
MaterialParams as_variant(const MRParams& p) { return MaterialParams{p}; }

}  // namespace

Problem build_bar_1d(int n_elements, const MaterialParams& material) {
  Problem p;
  p.family = Family::Bar1D;
  p.material = material;
  p.dofs_per_node = 1;
  p.gauss_per_element = 2;
  const int nn = n_elements + 1;
  p.mesh.nodes.resize(static_cast<std::size_t>(nn));
  for (int i = 0; i < nn; ++i) {
    p.mesh.nodes[static_cast<std::size_t>(i)] =
        Vector3(static_cast<double>(i) / n_elements, 0, 0);
  }
  p.mesh.nodes_per_element = 2;
  for (int e = 0; e < n_elements; ++e) {
    p.mesh.conn.push_back(e);
    p.mesh.conn.push_back(e + 1);
  }
  std::vector<bool> fixed(static_cast<std::size_t>(nn), false);
  fixed[0] = true;
  finalize_dofs(p, fixed);
  p.load_pattern[p.dof(nn - 1)] = 1.0;
  finalize_traction(p);
  finalize_adjacency(p);
  p.description = "bar1d n=" + std::to_string(n_elements);
  return p;
}

Problem build_axisymmetric_rod(int n_elements, const MaterialParams& material) {
  Problem p;
  p.family = Family::AxisymmetricRod;
  p.material = material;
  p.dofs_per_node = 2;  // axial displacement, lateral stretch increment
  p.gauss_per_element = 2;
  const int nn = n_elements + 1;
  p.mesh.nodes.resize(static_cast<std::size_t>(nn));
  for (int i = 0; i < nn; ++i) {
    p.mesh.nodes[static_cast<std::size_t>(i)] =
        Vector3(static_cast<double>(i) / n_elements, 0, 0);
  }
  p.mesh.nodes_per_element = 2;
  for (int e = 0; e < n_elements; ++e) {
    p.mesh.conn.push_back(e);
    p.mesh.conn.push_back(e + 1);
  }
  std::vector<bool> fixed(static_cast<std::size_t>(nn) * 2, false);
  fixed[0] = true;  // axial DOF of the left end
  finalize_dofs(p, fixed);
  p.load_pattern[p.dof(nn - 1, 0)] = 1.0;
  finalize_traction(p);
  finalize_adjacency(p);
  p.description = "axisymmetric n=" + std::to_string(n_elements);
  return p;
}

namespace {

Problem build_cube_mesh(int n, double side, const MaterialParams& material) {
  Problem p;
  p.family = Family::Hex3D;
  p.material = material;
  p.dofs_per_node = 3;
  const int nn = n + 1;
  auto id = [nn](int i, int j, int k) { return (k * nn + j) * nn + i; };
  p.mesh.nodes.resize(static_cast<std::size_t>(nn) * nn * nn);
  const double h = side / n;
  for (int k = 0; k < nn; ++k)
    for (int j = 0; j < nn; ++j)
      for (int i = 0; i < nn; ++i)
        p.mesh.nodes[static_cast<std::size_t>(id(i, j, k))] =
            Vector3(i * h, j * h, k * h);
  p.mesh.nodes_per_element = 8;
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        const int c[8] = {id(i, j, k),         id(i + 1, j, k),
                          id(i + 1, j + 1, k), id(i, j + 1, k),
                          id(i, j, k + 1),     id(i + 1, j, k + 1),
                          id(i + 1, j + 1, k + 1), id(i, j + 1, k + 1)};
        p.mesh.conn.insert(p.mesh.conn.end(), c, c + 8);
      }
  return p;
}

}  // namespace

Problem build_hex_cube(int n_per_edge, const MaterialParams& material,
                       LoadDirection direction) {
  const int n = n_per_edge;
  Problem p = build_cube_mesh(n, 1.0, material);
  const int nn = n + 1;
  auto id = [nn](int i, int j, int k) { return (k * nn + j) * nn + i; };
  std::vector<bool> fixed(static_cast<std::size_t>(p.n_nodes()) * 3, false);
  for (int k = 0; k < nn; ++k)
    for (int j = 0; j < nn; ++j)
      for (int i = 0; i < nn; ++i) {
        const int node = id(i, j, k);
        if (k == 0) fixed[static_cast<std::size_t>(node * 3 + 2)] = true;
        if (i == 0) fixed[static_cast<std::size_t>(node * 3 + 0)] = true;
        if (j == 0) fixed[static_cast<std::size_t>(node * 3 + 1)] = true;
      }
  finalize_dofs(p, fixed);
  const Vector3 dir = (direction == LoadDirection::Tension)
                          ? Vector3::UnitZ()
                          : Vector3(-Vector3::UnitZ());
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      add_quad_pressure(p,
                        {id(i, j, n), id(i + 1, j, n), id(i + 1, j + 1, n),
                         id(i, j + 1, n)},
                        dir, Vector3::Zero());
    }
  finalize_traction(p);
  finalize_adjacency(p);
  finalize_hex_caches(p, false);
  p.description = "cube n=" + std::to_string(n_per_edge);
  return p;
}

Problem build_tube(const VWParams& material, int nr, int nc, int na) {
  Problem p;
  p.family = Family::Hex3D;
  p.material = as_variant(material);
  p.dofs_per_node = 3;
  const double ri = 0.7, ro = 1.0, length = 5.0;
  const double two_pi = 2.0 * std::acos(-1.0);
  auto id = [nr, nc](int ir, int ic, int iz) {
    return (iz * nc + (ic % nc)) * (nr + 1) + ir;
  };
  p.mesh.nodes.resize(static_cast<std::size_t>(nr + 1) * nc * (na + 1));
  for (int iz = 0; iz <= na; ++iz)
    for (int ic = 0; ic < nc; ++ic)
      for (int ir = 0; ir <= nr; ++ir) {
        const double r = ri + (ro - ri) * ir / nr;
        const double th = two_pi * ic / nc;
        p.mesh.nodes[static_cast<std::size_t>(id(ir, ic, iz))] =
            Vector3(r * std::cos(th), r * std::sin(th), length * iz / na);
      }
  p.mesh.nodes_per_element = 8;
  for (int iz = 0; iz < na; ++iz)
    for (int ic = 0; ic < nc; ++ic)
      for (int ir = 0; ir < nr; ++ir) {
        const int c[8] = {id(ir, ic, iz),          id(ir + 1, ic, iz),
                          id(ir + 1, ic + 1, iz),  id(ir, ic + 1, iz),
                          id(ir, ic, iz + 1),      id(ir + 1, ic, iz + 1),
                          id(ir + 1, ic + 1, iz + 1), id(ir, ic + 1, iz + 1)};
        p.mesh.conn.insert(p.mesh.conn.end(), c, c + 8);
      }
  std::vector<bool> fixed(static_cast<std::size_t>(p.n_nodes()) * 3, false);
  for (int ic = 0; ic < nc; ++ic)
    for (int ir = 0; ir <= nr; ++ir)
      for (int c = 0; c < 3; ++c)
        fixed[static_cast<std::size_t>(id(ir, ic, 0) * 3 + c)] = true;
  finalize_dofs(p, fixed);
  for (int iz = 0; iz < na; ++iz)
    for (int ic = 0; ic < nc; ++ic) {
      const std::array<int, 4> quad = {id(0, ic, iz), id(0, ic + 1, iz),
                                       id(0, ic + 1, iz + 1),
                                       id(0, ic, iz + 1)};
      Vector3 centroid = Vector3::Zero();
      for (int a : quad) centroid += 0.25 * p.mesh.nodes[static_cast<std::size_t>(a)];
      const Vector3 outward(centroid[0], centroid[1], 0.0);
      add_quad_pressure(p, quad, Vector3::Zero(), outward);
    }
  finalize_traction(p);
  finalize_adjacency(p);
  finalize_hex_caches(p, true);
  p.description = "tube " + std::to_string(nr) + "x" + std::to_string(nc) +
                  "x" + std::to_string(na);
  return p;
}

Problem build_indentation(const MRParams& material, int n_per_edge,
                          double patch_fraction) {
  const int n = n_per_edge;
  const double side = 10.0;
  Problem p = build_cube_mesh(n, side, as_variant(material));
  const int nn = n + 1;
  auto id = [nn](int i, int j, int k) { return (k * nn + j) * nn + i; };
  std::vector<bool> fixed(static_cast<std::size_t>(p.n_nodes()) * 3, false);
  for (int j = 0; j < nn; ++j)
    for (int i = 0; i < nn; ++i)
      for (int c = 0; c < 3; ++c)
        fixed[static_cast<std::size_t>(id(i, j, 0) * 3 + c)] = true;
  finalize_dofs(p, fixed);
  const double h = side / n;
  const double half_patch = 0.5 * side * std::sqrt(patch_fraction);
  double selected_area = 0.0;
  std::vector<std::array<int, 4>> quads;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const double cx = (i + 0.5) * h, cy = (j + 0.5) * h;
      if (std::abs(cx - 0.5 * side) < half_patch + 1e-12 &&
          std::abs(cy - 0.5 * side) < half_patch + 1e-12) {
        quads.push_back({id(i, j, n), id(i + 1, j, n), id(i + 1, j + 1, n),
                         id(i, j + 1, n)});
        selected_area += h * h;
      }
    }
  if (quads.empty()) {
    throw ConfigError("indentation patch selects no facets; refine the mesh");
  }
  for (const auto& q : quads) {
    add_quad_pressure(p, q, -Vector3::UnitZ(), Vector3::Zero());
  }
  // normalize so the load scale is the total applied force
  p.load_pattern /= selected_area;
  finalize_traction(p);
  finalize_adjacency(p);
  finalize_hex_caches(p, false);
  p.description = "indentation n=" + std::to_string(n_per_edge) +
                  " patch_area=" + csv_num(selected_area);
  return p;
}

namespace {

void assemble_bar(const Problem& p, const Eigen::VectorXd& u,
                  AssembledSystem& sys,
                  std::vector<Eigen::Triplet<double>>& trips) {
  const int ne = p.mesh.n_elements();
  for (int e = 0; e < ne; ++e) {
    const auto conn = p.mesh.element(e);
    const int da = p.dof(conn[0]);
    const int db = p.dof(conn[1]);
    const double l = std::abs(p.mesh.nodes[static_cast<std::size_t>(conn[1])][0] -
                              p.mesh.nodes[static_cast<std::size_t>(conn[0])][0]);
    const double ua = da >= 0 ? u[da] : 0.0;
    const double ub = db >= 0 ? u[db] : 0.0;
    const double lambda = 1.0 + (ub - ua) / l;
    if (!(lambda > 0.0)) {
      throw NegativeStretch("bar element " + std::to_string(e) +
                            ": lambda = " + std::to_string(lambda));
    }
    sys.gauss_stretches[static_cast<std::size_t>(e) * 2] = lambda;
    sys.gauss_stretches[static_cast<std::size_t>(e) * 2 + 1] = lambda;
    const double P = uniaxial_P(lambda, p.material);
    const double dP = uniaxial_dP(lambda, p.material) / l;
    if (da >= 0) {
      sys.f_int[da] -= P;
      trips.emplace_back(da, da, dP);
      if (db >= 0) trips.emplace_back(da, db, -dP);
    }
    if (db >= 0) {
      sys.f_int[db] += P;
      trips.emplace_back(db, db, dP);
      if (da >= 0) trips.emplace_back(db, da, -dP);
    }
  }
}

void assemble_rod(const Problem& p, const Eigen::VectorXd& u,
                  AssembledSystem& sys,
                  std::vector<Eigen::Triplet<double>>& trips) {
  static const double xi_g[2] = {0.5 - 0.5 * kGauss1d, 0.5 + 0.5 * kGauss1d};
  const int ne = p.mesh.n_elements();
  for (int e = 0; e < ne; ++e) {
    const auto conn = p.mesh.element(e);
    const int dua = p.dof(conn[0], 0), dub = p.dof(conn[1], 0);
    const int dva = p.dof(conn[0], 1), dvb = p.dof(conn[1], 1);
    const double l = std::abs(p.mesh.nodes[static_cast<std::size_t>(conn[1])][0] -
                              p.mesh.nodes[static_cast<std::size_t>(conn[0])][0]);
    const double ua = dua >= 0 ? u[dua] : 0.0;
    const double ub = dub >= 0 ? u[dub] : 0.0;
    const double va = dva >= 0 ? u[dva] : 0.0;
    const double vb = dvb >= 0 ? u[dvb] : 0.0;
    const double lam1 = 1.0 + (ub - ua) / l;
    if (!(lam1 > 0.0)) {
      throw NegativeStretch("rod element " + std::to_string(e) +
                            ": axial lambda = " + std::to_string(lam1));
    }
    for (int g = 0; g < 2; ++g) {
      const double xi = xi_g[g];
      const double lam2 = 1.0 + (1.0 - xi) * va + xi * vb;
      if (!(lam2 > 0.0)) {
        throw NegativeStretch("rod element " + std::to_string(e) +
                              ": lateral lambda = " + std::to_string(lam2));
      }
      sys.gauss_stretches[static_cast<std::size_t>(e) * 2 +
                          static_cast<std::size_t>(g)] = lam1;
      Tensor2 F = Tensor2::Identity();
      F(0, 0) = lam1;
      F(1, 1) = lam2;
      F(2, 2) = lam2;
      const Tensor2 P = pk1_stress(F, p.material);
      const Tangent4 A = material_tangent(F, p.material);
      const double w = 0.5 * l;  // Gauss weight times element length
      // rows: axial = dE/du via P11 dPsi/dX, lateral = dE/dv via 2 P22 Psi
      const double dpsi[2] = {-1.0 / l, 1.0 / l};
      const double psi[2] = {1.0 - xi, xi};
      const int adof[2] = {dua, dub};
      const int vdof[2] = {dva, dvb};
      const double m11 = A(0, 0, 0, 0);
      const double m12 = A(0, 0, 1, 1) + A(0, 0, 2, 2);
      const double m21 = 2.0 * A(1, 1, 0, 0);
      const double m22 = 2.0 * (A(1, 1, 1, 1) + A(1, 1, 2, 2));
      for (int a = 0; a < 2; ++a) {
        if (adof[a] >= 0) sys.f_int[adof[a]] += P(0, 0) * dpsi[a] * w;
        if (vdof[a] >= 0) sys.f_int[vdof[a]] += 2.0 * P(1, 1) * psi[a] * w;
        for (int b = 0; b < 2; ++b) {
          if (adof[a] >= 0 && adof[b] >= 0)
            trips.emplace_back(adof[a], adof[b], dpsi[a] * m11 * dpsi[b] * w);
          if (adof[a] >= 0 && vdof[b] >= 0)
            trips.emplace_back(adof[a], vdof[b], dpsi[a] * m12 * psi[b] * w);
          if (vdof[a] >= 0 && adof[b] >= 0)
            trips.emplace_back(vdof[a], adof[b], psi[a] * m21 * dpsi[b] * w);
          if (vdof[a] >= 0 && vdof[b] >= 0)
            trips.emplace_back(vdof[a], vdof[b], psi[a] * m22 * psi[b] * w);
        }
      }
    }
  }
}

void assemble_hex(const Problem& p, const Eigen::VectorXd& u,
                  AssembledSystem& sys,
                  std::vector<Eigen::Triplet<double>>& trips) {
  const int ne = p.mesh.n_elements();
  double Ke[24][24];
  double ue[8][3];
  int edof[24];
  for (int e = 0; e < ne; ++e) {
    const auto conn = p.mesh.element(e);
    for (int a = 0; a < 8; ++a) {
      for (int c = 0; c < 3; ++c) {
        const int d = p.dof(conn[a], c);
        edof[a * 3 + c] = d;
        ue[a][c] = d >= 0 ? u[d] : 0.0;
      }
    }
    for (auto& row : Ke) std::fill(std::begin(row), std::end(row), 0.0);
    double fe[24] = {0};
    for (int g = 0; g < 8; ++g) {
      const std::size_t base =
          ((static_cast<std::size_t>(e) * 8) + static_cast<std::size_t>(g)) *
          8 * 3;
      const double* gradN = p.hex_gradN.data() + base;
      const double wdetJ =
          p.hex_wdetJ[static_cast<std::size_t>(e) * 8 +
                      static_cast<std::size_t>(g)];
      Tensor2 F = Tensor2::Identity();
      for (int a = 0; a < 8; ++a)
        for (int i = 0; i < 3; ++i)
          for (int J = 0; J < 3; ++J)
            F(i, J) += ue[a][i] * gradN[a * 3 + J];
      const double detF = F.determinant();
      if (!(detF > 0.0)) {
        throw NonPositiveJacobian(
            "element " + std::to_string(e) + " Gauss point " +
                std::to_string(g) + ": det(F) = " + std::to_string(detF),
            e);
      }
      const Vector3& axis = p.gauss_axis[static_cast<std::size_t>(e) * 8 +
                                         static_cast<std::size_t>(g)];
      const Vector3 FN = F * axis;
      sys.gauss_stretches[static_cast<std::size_t>(e) * 8 +
                          static_cast<std::size_t>(g)] = FN.norm();
      const Tensor2 P = pk1_stress(F, p.material);
      const Tangent4 A = material_tangent(F, p.material);
      for (int a = 0; a < 8; ++a)
        for (int i = 0; i < 3; ++i) {
          double s = 0;
          for (int J = 0; J < 3; ++J) s += P(i, J) * gradN[a * 3 + J];
          fe[a * 3 + i] += s * wdetJ;
        }
      // Ke[3a+i][3b+j] += gradN_a[J] A(i,J,j,L) gradN_b[L] * wdetJ
      for (int a = 0; a < 8; ++a) {
        double ga[3][3][3];  // [i][j][L] = sum_J gradN_a[J] A(i,J,j,L)
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j)
            for (int L = 0; L < 3; ++L) {
              double s = 0;
              for (int J = 0; J < 3; ++J)
                s += gradN[a * 3 + J] * A(i, J, j, L);
              ga[i][j][L] = s;
            }
        for (int b = 0; b < 8; ++b)
          for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
              double s = 0;
              for (int L = 0; L < 3; ++L) s += ga[i][j][L] * gradN[b * 3 + L];
              Ke[a * 3 + i][b * 3 + j] += s * wdetJ;
            }
      }
    }
    for (int r = 0; r < 24; ++r) {
      if (edof[r] < 0) continue;
      sys.f_int[edof[r]] += fe[r];
      for (int c = 0; c < 24; ++c) {
        if (edof[c] >= 0) trips.emplace_back(edof[r], edof[c], Ke[r][c]);
      }
    }
  }
}

}  // namespace

AssembledSystem assemble(const Problem& p, const Eigen::VectorXd& u,
                         double load) {
  AssembledSystem sys;
  sys.f_int = Eigen::VectorXd::Zero(p.n_free);
  sys.f_ext = load * p.load_pattern;
  sys.gauss_stretches.assign(
      static_cast<std::size_t>(p.mesh.n_elements()) *
          static_cast<std::size_t>(p.gauss_per_element),
      1.0);
  std::vector<Eigen::Triplet<double>> trips;
  switch (p.family) {
    case Family::Bar1D:
      trips.reserve(static_cast<std::size_t>(p.mesh.n_elements()) * 4);
      assemble_bar(p, u, sys, trips);
      break;
    case Family::AxisymmetricRod:
      trips.reserve(static_cast<std::size_t>(p.mesh.n_elements()) * 32);
      assemble_rod(p, u, sys, trips);
      break;
    case Family::Hex3D:
      trips.reserve(static_cast<std::size_t>(p.mesh.n_elements()) * 576);
      assemble_hex(p, u, sys, trips);
      break;
  }
  sys.K.resize(p.n_free, p.n_free);
  sys.K.setFromTriplets(trips.begin(), trips.end());
  return sys;
}

std::vector<double> element_mean_stretches(const Problem& p,
                                           const AssembledSystem& sys) {
  const int ne = p.mesh.n_elements();
  const int ng = p.gauss_per_element;
  std::vector<double> means(static_cast<std::size_t>(ne), 1.0);
  for (int e = 0; e < ne; ++e) {
    double s = 0.0;
    for (int g = 0; g < ng; ++g)
      s += sys.gauss_stretches[static_cast<std::size_t>(e) *
                                   static_cast<std::size_t>(ng) +
                               static_cast<std::size_t>(g)];
    means[static_cast<std::size_t>(e)] = s / ng;
  }
  return means;
}

double nodal_stretch_at(const Problem& p,
                        const std::vector<double>& element_means, int node) {
  const auto& elems = p.node_elements[static_cast<std::size_t>(node)];
  std::vector<double> vals;
  vals.reserve(elems.size());
  for (int e : elems) vals.push_back(element_means[static_cast<std::size_t>(e)]);
  return nodal_stretch(vals);
}

void dump_mesh(const Problem& p, std::ostream& os) {
  os << "# " << p.description << "\n";
  os << "# nodes " << p.n_nodes() << "\n";
  for (int n = 0; n < p.n_nodes(); ++n) {
    const Vector3& X = p.mesh.nodes[static_cast<std::size_t>(n)];
    os << n << ' ' << csv_num(X[0]) << ' ' << csv_num(X[1]) << ' '
       << csv_num(X[2]) << '\n';
  }
  os << "# elements " << p.mesh.n_elements() << "\n";
  for (int e = 0; e < p.mesh.n_elements(); ++e) {
    os << e;
    for (int n : p.mesh.element(e)) os << ' ' << n;
    os << '\n';
  }
}

}  // namespace trfem
