#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cordial/tree.hpp"

namespace cordial {

// Named rooted pieces that the six-cordial construction labels from tables.
enum class ShapeId {
  A, B, C, D, E, F6, G, H,            // six vertices, one root
  I, J, K, L, M, N, O, P, Q, R,       // five vertices, one root
  Tp, Tp2, Tp3, Tp4,                  // five vertices, one root, n = 0 mod 6 case (ii)
  Tpp, Tppp, Tiv, Tv,                 // four vertices, one root
  F, F2, F3, F4,                      // six vertices, two roots
  Fp,                                 // five vertices, two roots
};

enum class ShapeFamily { SixVertex, FiveVertex, TPrime, TDoublePrime, Forest, ForestPrime };

const char* to_string(ShapeFamily family);

struct Shape {
  ShapeId id;
  std::string token;  // name used in the table file
  ShapeFamily family;
  RootedForest forest;
  // table_order[p] is the flat vertex printed at non-root position p
  std::vector<int> table_order;
};

std::span<const Shape> all_shapes();
const Shape& shape(ShapeId id);
std::optional<ShapeId> shape_from_token(std::string_view token);
std::vector<ShapeId> family_members(ShapeFamily family);

/// Catalog member of `family` root-isomorphic to the piece, if any.
std::optional<ShapeId> classify_piece(const RootedForest& piece, ShapeFamily family);

/// Codes within each family are pairwise distinct. Returns the offending pair
/// of tokens, or an empty string when the catalog is consistent.
std::string catalog_collision();

}  // namespace cordial
