#pragma once
#include <cstdint>
#include <vector>

#include "lembill/common.hpp"

namespace lembill::encoding {

using Vec = std::vector<uint64_t>;  // small non-negative entries, embedded in Z_r later

// Dual binary encoding of an N_v-bit value.  Vectors are indexed by scan
// position j = 0..N_v-1 covering bits MSB -> LSB; all vectors are padded to
// the uniform dimension 2*N_v + 2.
//
// Left side (value x, two families), scan position j deciding bit b:
//   less[j]    = [(x_k, 1-x_k) for prior bits k] ++ [x_b, 1, 0, 0]      ++ pad
//   greater[j] = [(x_k, 1-x_k) for prior bits k] ++ [0, 0, 1-x_b, 1]    ++ pad
// Right side (value y, one family):
//   vecs[j]    = [(1-y_k, y_k) for prior bits k] ++ [1, 1-y_b, 1, y_b]  ++ pad
//
// <less[j], vecs[j]>    = #prefix-mismatches + x_b + (1 - y_b)
// <greater[j], vecs[j]> = #prefix-mismatches + (1 - x_b) + y_b
// so the first (and only) zero across both families decides < or >; no zero
// anywhere means equality.

struct LeftEncoding {
    unsigned nv = 0;
    std::vector<Vec> less, greater;  // N_v vectors each
};

struct RightEncoding {
    unsigned nv = 0;
    std::vector<Vec> vecs;  // N_v vectors
};

inline unsigned dimension(unsigned nv) { return 2 * nv + 2; }

LeftEncoding encode_x(uint64_t x, unsigned nv);
RightEncoding encode_y(uint64_t y, unsigned nv);

enum class Cmp { LT, GT, EQ };

// clear-text reference evaluation; throws if both families fire (construction bug)
Cmp plain_compare(const LeftEncoding& xe, const RightEncoding& ye);

// total zero hits across both families and all indices (uniqueness property)
unsigned zero_hits(const LeftEncoding& xe, const RightEncoding& ye);

}  // namespace lembill::encoding
