#include "cordial/catalog.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace cordial {

const char* to_string(ShapeFamily family) {
  switch (family) {
    case ShapeFamily::SixVertex: return "six-vertex";
    case ShapeFamily::FiveVertex: return "five-vertex";
    case ShapeFamily::TPrime: return "T'-family";
    case ShapeFamily::TDoublePrime: return "T''-family";
    case ShapeFamily::Forest: return "F-family";
    case ShapeFamily::ForestPrime: return "F'";
  }
  return "unknown";
}

namespace {

constexpr int R = -1;  // "is a root" in the printed parent arrays

struct RawShape {
  ShapeId id;
  const char* token;
  ShapeFamily family;
  int roots;
  std::vector<int> parents;  // indexed by printed position; roots first
};

// Parents refer to printed positions. Non-root positions start at `roots`.
Shape build(const RawShape& raw) {
  const int total = static_cast<int>(raw.parents.size());
  std::vector<int> owner(static_cast<std::size_t>(total));
  for (int p = 0; p < total; ++p) {
    owner[static_cast<std::size_t>(p)] =
        p < raw.roots ? p : owner[static_cast<std::size_t>(raw.parents[static_cast<std::size_t>(p)])];
  }
  std::vector<std::vector<int>> members(static_cast<std::size_t>(raw.roots));
  for (int p = raw.roots; p < total; ++p) members[static_cast<std::size_t>(owner[static_cast<std::size_t>(p)])].push_back(p);

  std::vector<RootedTree> comps;
  std::vector<int> flat(static_cast<std::size_t>(total), -1);
  int offset = 0;
  for (const auto& m : members) {
    std::vector<int> parent;
    for (std::size_t i = 0; i < m.size(); ++i) flat[static_cast<std::size_t>(m[i])] = offset + static_cast<int>(i);
    for (int p : m) {
      const int q = raw.parents[static_cast<std::size_t>(p)];
      parent.push_back(q < raw.roots ? RootedTree::kRoot : flat[static_cast<std::size_t>(q)] - offset);
    }
    comps.emplace_back(std::move(parent));
    offset += static_cast<int>(m.size());
  }
  Shape s{raw.id, raw.token, raw.family, RootedForest(std::move(comps)), {}};
  for (int p = raw.roots; p < total; ++p) s.table_order.push_back(flat[static_cast<std::size_t>(p)]);
  return s;
}

std::vector<Shape> make_catalog() {
  using SF = ShapeFamily;
  const std::vector<RawShape> raw = {
      {ShapeId::A, "a", SF::SixVertex, 1, {R, 0, 0, 1, 2, 4, 5}},
      {ShapeId::B, "b", SF::SixVertex, 1, {R, 0, 0, 1, 2, 3, 4}},
      {ShapeId::C, "c", SF::SixVertex, 1, {R, 0, 0, 1, 1, 2, 2}},
      {ShapeId::D, "d", SF::SixVertex, 1, {R, 0, 0, 1, 1, 1, 2}},
      {ShapeId::E, "e", SF::SixVertex, 1, {R, 0, 0, 1, 1, 2, 5}},
      {ShapeId::F6, "f", SF::SixVertex, 1, {R, 0, 0, 0, 2, 3, 5}},
      {ShapeId::G, "g", SF::SixVertex, 1, {R, 0, 0, 0, 1, 2, 3}},
      {ShapeId::H, "h", SF::SixVertex, 1, {R, 0, 0, 0, 0, 3, 4}},
      {ShapeId::I, "i", SF::FiveVertex, 1, {R, 0, 0, 1, 2, 4}},
      {ShapeId::J, "j", SF::FiveVertex, 1, {R, 0, 0, 1, 2, 2}},
      {ShapeId::K, "k", SF::FiveVertex, 1, {R, 0, 0, 2, 3, 4}},
      {ShapeId::L, "l", SF::FiveVertex, 1, {R, 0, 0, 2, 3, 3}},
      {ShapeId::M, "m", SF::FiveVertex, 1, {R, 0, 0, 2, 2, 3}},
      {ShapeId::N, "n", SF::FiveVertex, 1, {R, 0, 0, 2, 2, 2}},
      {ShapeId::O, "o", SF::FiveVertex, 1, {R, 0, 0, 0, 2, 3}},
      {ShapeId::P, "p", SF::FiveVertex, 1, {R, 0, 0, 0, 3, 3}},
      {ShapeId::Q, "q", SF::FiveVertex, 1, {R, 0, 0, 0, 0, 4}},
      {ShapeId::R, "r", SF::FiveVertex, 1, {R, 0, 0, 0, 0, 0}},
      {ShapeId::Tp, "Tp", SF::TPrime, 1, {R, 0, 0, 1, 2, 4}},
      {ShapeId::Tp2, "Tp2", SF::TPrime, 1, {R, 0, 1, 1, 2, 4}},
      {ShapeId::Tp3, "Tp3", SF::TPrime, 1, {R, 0, 1, 2, 2, 4}},
      {ShapeId::Tp4, "Tp4", SF::TPrime, 1, {R, 0, 1, 2, 3, 3}},
      {ShapeId::Tpp, "Tpp", SF::TDoublePrime, 1, {R, 0, 0, 1, 2}},
      {ShapeId::Tppp, "Tppp", SF::TDoublePrime, 1, {R, 0, 1, 1, 1}},
      {ShapeId::Tiv, "Tiv", SF::TDoublePrime, 1, {R, 0, 1, 2, 2}},
      {ShapeId::Tv, "Tv", SF::TDoublePrime, 1, {R, 0, 1, 1, 3}},
      {ShapeId::F, "F", SF::Forest, 2, {R, R, 0, 1, 2, 3, 5, 6}},
      {ShapeId::F2, "F2", SF::Forest, 2, {R, R, 0, 1, 2, 3, 4, 4}},
      {ShapeId::F3, "F3", SF::Forest, 2, {R, R, 0, 1, 2, 2, 3, 5}},
      {ShapeId::F4, "F4", SF::Forest, 2, {R, R, 0, 0, 1, 2, 3, 4}},
      {ShapeId::Fp, "Fp", SF::ForestPrime, 2, {R, R, 0, 1, 2, 3, 5}},
  };
  std::vector<Shape> out;
  for (const auto& r : raw) out.push_back(build(r));
  return out;
}

const std::vector<Shape>& catalog() {
  static const std::vector<Shape> c = make_catalog();
  return c;
}

}  // namespace

std::span<const Shape> all_shapes() { return catalog(); }

const Shape& shape(ShapeId id) {
  for (const auto& s : catalog()) {
    if (s.id == id) return s;
  }
  throw std::out_of_range("unknown shape id");
}

std::optional<ShapeId> shape_from_token(std::string_view token) {
  for (const auto& s : catalog()) {
    if (s.token == token) return s.id;
  }
  return std::nullopt;
}

std::vector<ShapeId> family_members(ShapeFamily family) {
  std::vector<ShapeId> out;
  for (const auto& s : catalog()) {
    if (s.family == family) out.push_back(s.id);
  }
  return out;
}

std::optional<ShapeId> classify_piece(const RootedForest& piece, ShapeFamily family) {
  const std::string code = piece.canonical_form();
  for (const auto& s : catalog()) {
    if (s.family == family && s.forest.order() == piece.order() && s.forest.canonical_form() == code) return s.id;
  }
  return std::nullopt;
}

std::string catalog_collision() {
  const auto& c = catalog();
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (std::size_t j = i + 1; j < c.size(); ++j) {
      if (c[i].family == c[j].family && c[i].forest.canonical_form() == c[j].forest.canonical_form()) {
        return c[i].token + " " + c[j].token;
      }
    }
  }
  return {};
}

}  // namespace cordial
