#pragma once

#include <functional>
#include <iosfwd>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "json.hpp"
#include "sixv/model.hpp"

namespace sixv {

using Count = boost::multiprecision::cpp_int;

enum class EnumMode { brute, transfer };

inline constexpr int kBruteMaxN = 4;
inline constexpr int kTransferMaxN = 10;
inline constexpr int kExtendedMaxN = 5;
inline constexpr int kExtendedMaxL = 4;

struct EnumResult {
  Real Z;
  Count config_count;
};

/// Visits every valid state of the lattice (row-major depth-first search).
void for_each_state(const Geometry& g, const std::function<void(const LatticeState&)>& visit);

EnumResult enumerate_Z(int n, const SpectralParams& params, EnumMode mode);
EnumResult enumerate_Z(const WeightTable<Real>& table, EnumMode mode);

struct CorrelationTable {
  int n = 0;
  Real Z;
  std::vector<Real> H, G, A, D;  // index r-1
  std::vector<Real> h_coeffs;    // h_N(z) = sum h_coeffs[i] z^i
};

CorrelationTable enumerate_correlations(int n, const SpectralParams& params);
CorrelationTable enumerate_correlations(const WeightTable<Real>& table);

Real evaluate_h(const CorrelationTable& table, const Real& z);

struct ExtendedLattice {
  int n = 0;
  int L = 0;
  std::vector<Real> Z_left;   // index k-1, k = 1..2N counted from the bottom
  std::vector<Real> Z_right;  // index k-1
  Real Z_NL;                  // sum_k Z_left Z_right
  Real Z_direct;              // full sweep of the extended lattice
};

/// Weighted sum over the single path of the left domain that leaves the
/// domain through row 2N - k. Off-path vertices carry w1.
Real left_domain_paths(const WeightTable<Real>& table, int k);

ExtendedLattice enumerate_extended(int n, int L, const SpectralParams& params);

nlohmann::json to_json(const CorrelationTable& table);
nlohmann::json to_json(const ExtendedLattice& ext);
void write_csv(std::ostream& os, const CorrelationTable& table);

}  // namespace sixv
