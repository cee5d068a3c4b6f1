#pragma once

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <string>
#include <vector>

#include "qqsys/ints.hpp"

namespace qqsys {

using IMat = std::vector<std::vector<long long>>;
using IVec = std::vector<long long>;

inline long long idet(const IMat& m) {
  int n = static_cast<int>(m.size());
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  long long s = 0, sign = 1;
  for (int c = 0; c < n; ++c) {
    IMat minor;
    for (int i = 1; i < n; ++i) {
      IVec row;
      for (int j = 0; j < n; ++j)
        if (j != c) row.push_back(m[i][j]);
      minor.push_back(row);
    }
    s += sign * m[0][c] * idet(minor);
    sign = -sign;
  }
  return s;
}

inline IMat iadjugate(const IMat& m) {
  int n = static_cast<int>(m.size());
  IMat adj(n, IVec(n, 0));
  if (n == 1) {
    adj[0][0] = 1;
    return adj;
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      IMat minor;
      for (int r = 0; r < n; ++r) {
        if (r == i) continue;
        IVec row;
        for (int c = 0; c < n; ++c)
          if (c != j) row.push_back(m[r][c]);
        minor.push_back(row);
      }
      long long cof = idet(minor);
      if ((i + j) % 2) cof = -cof;
      adj[j][i] = cof;  // transpose of cofactor matrix
    }
  return adj;
}

// Static data of a finite-type simple Lie algebra in the normalization used
// by the whole engine: t_alpha = 1 on long nodes, t_alpha = t0 on short
// nodes, C symmetrized by t on the right (C_{ab} t_b = C_{ba} t_a), and
// Lambda = adjugate(C) = det(C) * C^{-1}, a nonnegative integer matrix.
struct CartanData {
  std::string name;
  char family = 'A';
  int rank = 0;
  IMat C;          // Cartan matrix
  IVec t;          // symmetrizers, 1 on long nodes
  long long t0 = 1;
  long long delta = 1;  // det(C)
  IMat L;          // Lambda = adjugate(C)
  std::vector<int> long_nodes;   // 0-based
  std::vector<int> short_nodes;  // 0-based, empty in simply-laced type
  // The two nodes astride the long/short boundary (0-based, -1 if simply
  // laced): long_boundary is the unique long node with a short neighbor,
  // short_boundary the unique short node with a long neighbor.
  int long_boundary = -1;
  int short_boundary = -1;

  bool is_short(int a) const { return t[a] > 1; }
  bool adjacent(int a, int b) const { return a != b && C[a][b] != 0; }
  std::vector<int> neighbors(int a) const {
    std::vector<int> out;
    for (int b = 0; b < rank; ++b)
      if (adjacent(a, b)) out.push_back(b);
    return out;
  }
};

inline CartanData build_cartan(const std::string& name) {
  if (name.size() < 2) throw std::invalid_argument("bad algebra name: " + name);
  char fam = static_cast<char>(std::toupper(name[0]));
  int r = std::stoi(name.substr(1));
  auto bad = [&] { throw std::invalid_argument("bad algebra name: " + name); };
  CartanData d;
  d.family = fam;
  d.rank = r;
  d.name = std::string(1, fam) + std::to_string(r);
  d.C.assign(r, IVec(r, 0));
  for (int i = 0; i < r; ++i) d.C[i][i] = 2;
  d.t.assign(r, 1);
  auto path = [&](int upto) {
    for (int i = 0; i + 1 < upto; ++i) d.C[i][i + 1] = d.C[i + 1][i] = -1;
  };
  switch (fam) {
    case 'A':
      if (r < 1) bad();
      path(r);
      break;
    case 'D':
      if (r < 4) bad();
      path(r - 1);
      d.C[r - 3][r - 1] = d.C[r - 1][r - 3] = -1;
      break;
    case 'E': {
      if (r < 6 || r > 8) bad();
      // Chain 1-3-4-5-...-r with node 2 attached to node 4 (1-based).
      auto link = [&](int a, int b) { d.C[a - 1][b - 1] = d.C[b - 1][a - 1] = -1; };
      link(1, 3);
      link(3, 4);
      link(2, 4);
      for (int v = 4; v < r; ++v) link(v, v + 1);
      break;
    }
    case 'B':
      if (r < 2) bad();
      path(r);
      d.t[r - 1] = 2;
      d.C[r - 1][r - 2] = -2;  // short row, long column
      d.long_boundary = r - 2;
      d.short_boundary = r - 1;
      break;
    case 'C':
      if (r < 2) bad();
      path(r);
      for (int i = 0; i + 1 < r; ++i) d.t[i] = 2;
      d.C[r - 2][r - 1] = -2;  // short row, long column
      d.long_boundary = r - 1;
      d.short_boundary = r - 2;
      break;
    case 'F':
      if (r != 4) bad();
      path(4);
      d.t[2] = d.t[3] = 2;
      d.C[2][1] = -2;
      d.long_boundary = 1;
      d.short_boundary = 2;
      break;
    case 'G':
      if (r != 2) bad();
      d.C[0][1] = -1;
      d.C[1][0] = -3;
      d.t[1] = 3;
      d.long_boundary = 0;
      d.short_boundary = 1;
      break;
    default:
      bad();
  }
  d.t0 = *std::max_element(d.t.begin(), d.t.end());
  for (int a = 0; a < r; ++a)
    (d.is_short(a) ? d.short_nodes : d.long_nodes).push_back(a);
  // Symmetrizability sanity check.
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b)
      if (d.C[a][b] * d.t[b] != d.C[b][a] * d.t[a])
        throw std::logic_error("Cartan matrix is not t-symmetrizable");
  d.delta = idet(d.C);
  if (d.delta <= 0) throw std::logic_error("Cartan determinant must be positive");
  d.L = iadjugate(d.C);
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b) {
      long long s1 = 0, s2 = 0;
      for (int k = 0; k < r; ++k) {
        s1 += d.L[a][k] * d.C[k][b];
        s2 += d.C[a][k] * d.L[k][b];
      }
      long long want = (a == b) ? d.delta : 0;
      if (s1 != want || s2 != want)
        throw std::logic_error("adjugate check failed");
      if (d.L[a][b] < 0) throw std::logic_error("Lambda must be nonnegative");
      if (d.L[a][b] * d.t[b] != d.t[a] * d.L[b][a])
        throw std::logic_error("Lambda is not t-symmetric");
    }
  return d;
}

// Admissibility of an integer node-vector m: for every ordered adjacent pair
// (a,b) with C_{ab} = -1,
//   -min(t_a,t_b) <= t_a m_b - t_b m_a <= max(t_a,t_b).
inline bool is_admissible_path(const CartanData& d, const std::vector<long long>& m) {
  if (static_cast<int>(m.size()) != d.rank)
    throw std::invalid_argument("path vector has wrong length");
  for (int a = 0; a < d.rank; ++a)
    for (int b = 0; b < d.rank; ++b) {
      if (d.C[a][b] != -1) continue;
      long long v = d.t[a] * m[b] - d.t[b] * m[a];
      long long lo = -std::min(d.t[a], d.t[b]);
      long long hi = std::max(d.t[a], d.t[b]);
      if (v < lo || v > hi) return false;
    }
  return true;
}

// The 2r x 2r exchange matrix and compatible commutation matrix for the
// initial cluster (Q_{.,0}; Q_{.,1}).  Row/column order: slot-0 nodes
// ascending, then slot-1 nodes ascending.
struct SeedMatrices {
  IMat B;       // exchange matrix
  IMat Ltilde;  // commutation exponents in nu-units
};

inline SeedMatrices seed_matrices(const CartanData& d) {
  int r = d.rank, n = 2 * r;
  SeedMatrices s;
  s.B.assign(n, IVec(n, 0));
  s.Ltilde.assign(n, IVec(n, 0));
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b) {
      s.B[a][b] = d.C[b][a] - d.C[a][b];
      s.B[a][r + b] = -d.C[b][a];
      s.B[r + a][b] = d.C[a][b];
      s.Ltilde[a][r + b] = -d.L[a][b];
      s.Ltilde[r + a][b] = d.L[b][a];
      s.Ltilde[r + a][r + b] = d.L[b][a] - d.L[a][b];
    }
  return s;
}

// Commutation exponent in nu-units between generators Q_{a,i} and Q_{b,j}:
//   Q_{a,i} Q_{b,j} = nu^{lambda} Q_{b,j} Q_{a,i},
//   lambda = Lambda_{ba} i - Lambda_{ab} j.
inline long long comm_exp(const CartanData& d, int a, long long i, int b, long long j) {
  return d.L[b][a] * i - d.L[a][b] * j;
}

}  // namespace qqsys
