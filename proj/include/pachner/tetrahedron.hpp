#pragma once

// Metric kernels for a single tetrahedron, templated on the scalar type.
//
// Vertices are numbered 0..3 and the six edges follow the fixed order
// (01, 02, 03, 12, 13, 23), so edge k and edge 5-k are opposite.

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <Eigen/LU>
#include <algorithm>
#include <array>
#include <cmath>

#include "pachner/error.hpp"

namespace pachner {

template <typename Scalar>
using Point3 = Eigen::Matrix<Scalar, 3, 1>;
template <typename Scalar>
using TetLengths = Eigen::Matrix<Scalar, 6, 1>;
template <typename Scalar>
using TetAngles = Eigen::Matrix<Scalar, 6, 1>;

inline constexpr std::array<std::array<int, 2>, 6> kTetEdges{
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

constexpr int local_edge(int i, int j) {
  if (i > j) std::swap(i, j);
  for (int k = 0; k < 6; ++k)
    if (kTetEdges[k][0] == i && kTetEdges[k][1] == j) return k;
  return -1;
}

constexpr int opposite_edge(int k) { return 5 - k; }

/// (1/6) det[q - p, r - p, s - p].
template <typename Scalar>
Scalar signed_volume(const Point3<Scalar>& p, const Point3<Scalar>& q, const Point3<Scalar>& r,
                     const Point3<Scalar>& s) {
  return (q - p).cross(r - p).dot(s - p) / Scalar(6);
}

template <typename Scalar>
TetLengths<Scalar> lengths_from_points(const std::array<Point3<Scalar>, 4>& p) {
  TetLengths<Scalar> l;
  for (int k = 0; k < 6; ++k) l(k) = (p[kTetEdges[k][0]] - p[kTetEdges[k][1]]).norm();
  return l;
}

/// 5x5 Cayley-Menger determinant; equals 288 V^2 for a Euclidean tetrahedron.
template <typename Scalar>
Scalar cayley_menger(const TetLengths<Scalar>& l) {
  Eigen::Matrix<Scalar, 5, 5> cm = Eigen::Matrix<Scalar, 5, 5>::Zero();
  for (int i = 1; i < 5; ++i) cm(0, i) = cm(i, 0) = Scalar(1);
  for (int k = 0; k < 6; ++k) {
    const int i = kTetEdges[k][0] + 1, j = kTetEdges[k][1] + 1;
    cm(i, j) = cm(j, i) = l(k) * l(k);
  }
  return cm.determinant();
}

/// Volume from edge lengths. Throws NotRealizable when the Cayley-Menger
/// determinant is negative beyond rounding.
template <typename Scalar>
Scalar volume_from_lengths(const TetLengths<Scalar>& l) {
  using std::sqrt;
  if ((l.array() <= Scalar(0)).any())
    throw Error(ErrorKind::NotRealizable, "edge lengths must be positive");
  const Scalar cm = cayley_menger(l);
  const Scalar l2 = l.maxCoeff() * l.maxCoeff();
  if (cm < -Scalar(1e-12) * l2 * l2 * l2)
    throw Error(ErrorKind::NotRealizable, "Cayley-Menger determinant is negative");
  return sqrt(std::max(cm, Scalar(0)) / Scalar(288));
}

/// Triangle area from side lengths (Kahan's ordering of Heron's formula).
template <typename Scalar>
Scalar triangle_area(Scalar a, Scalar b, Scalar c) {
  using std::sqrt;
  std::array<Scalar, 3> s{a, b, c};
  std::sort(s.begin(), s.end(), [](Scalar x, Scalar y) { return x > y; });
  const auto [x, y, z] = s;
  const Scalar prod = (x + (y + z)) * (z - (x - y)) * (z + (x - y)) * (x + (y - z));
  if (prod < -Scalar(1e-12) * x * x * x * x)
    throw Error(ErrorKind::NotRealizable, "triangle inequality violated");
  return sqrt(std::max(prod, Scalar(0))) / Scalar(4);
}

/// Area of the face opposite vertex `v`.
template <typename Scalar>
Scalar face_area(const TetLengths<Scalar>& l, int v) {
  std::array<int, 3> w{};
  int n = 0;
  for (int i = 0; i < 4; ++i)
    if (i != v) w[n++] = i;
  return triangle_area(l(local_edge(w[0], w[1])), l(local_edge(w[0], w[2])),
                       l(local_edge(w[1], w[2])));
}

/// Interior dihedral angle at local edge `e`, in (0, pi).
///
/// The tetrahedron is re-embedded with edge e = (i, j) on the x axis and
/// vertex k in the upper xy half-plane; the angle is read off the position of
/// the fourth vertex m with atan2, avoiding arccos near +-1.
template <typename Scalar>
Scalar dihedral_angle(const TetLengths<Scalar>& l, int e) {
  using std::atan2;
  using std::sqrt;
  const int i = kTetEdges[e][0], j = kTetEdges[e][1];
  const int k = kTetEdges[opposite_edge(e)][0], m = kTetEdges[opposite_edge(e)][1];
  if ((l.array() <= Scalar(0)).any())
    throw Error(ErrorKind::NotRealizable, "edge lengths must be positive");
  const Scalar lmax = l.maxCoeff();

  const Scalar lij = l(e);
  const Scalar lik = l(local_edge(i, k)), ljk = l(local_edge(j, k));
  const Scalar lim = l(local_edge(i, m)), ljm = l(local_edge(j, m));
  const Scalar lkm = l(opposite_edge(e));

  const Scalar area_k = triangle_area(lij, lik, ljk);
  const Scalar area_m = triangle_area(lij, lim, ljm);
  if (area_k < Scalar(1e-10) * lmax * lmax || area_m < Scalar(1e-10) * lmax * lmax)
    throw Error(ErrorKind::DegenerateFace, "face adjacent to the edge has vanishing area");

  const Scalar xk = (lik * lik + lij * lij - ljk * ljk) / (Scalar(2) * lij);
  const Scalar yk = Scalar(2) * area_k / lij;
  const Scalar xm = (lim * lim + lij * lij - ljm * ljm) / (Scalar(2) * lij);
  const Scalar rho = Scalar(2) * area_m / lij;  // distance of m from the edge axis
  const Scalar ym = (lim * lim - lkm * lkm + lik * lik - Scalar(2) * xm * xk) / (Scalar(2) * yk);
  const Scalar z2 = (rho - ym) * (rho + ym);
  if (z2 < -Scalar(1e-10) * rho * rho)
    throw Error(ErrorKind::NotRealizable, "lengths violate the Cayley-Menger condition");
  return atan2(sqrt(std::max(z2, Scalar(0))), ym);
}

template <typename Scalar>
TetAngles<Scalar> dihedral_angles(const TetLengths<Scalar>& l) {
  TetAngles<Scalar> a;
  for (int k = 0; k < 6; ++k) a(k) = dihedral_angle(l, k);
  return a;
}

/// sin(theta_e) = (3/2) l_e V / (S1 S2); independent of dihedral_angle.
template <typename Scalar>
Scalar dihedral_sine(const TetLengths<Scalar>& l, int e) {
  const int k = kTetEdges[opposite_edge(e)][0], m = kTetEdges[opposite_edge(e)][1];
  // faces containing e are those opposite the two vertices not on e
  const Scalar s1 = face_area(l, k), s2 = face_area(l, m);
  return Scalar(1.5) * l(e) * volume_from_lengths(l) / (s1 * s2);
}

}  // namespace pachner
