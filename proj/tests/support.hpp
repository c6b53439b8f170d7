#pragma once

#include <memory>
#include <string>
#include <vector>

#include "cdst/context.hpp"
#include "cdst/evidence.hpp"
#include "cdst/lattice.hpp"
#include "cdst/rational.hpp"

namespace cdst::testing {

inline Rational q(const char* text) { return parse_rational(text); }

inline IndexSet set_of(std::initializer_list<std::size_t> items) {
  IndexSet s;
  for (auto i : items) s.insert(i);
  return s;
}

inline FormalContext make_context(std::vector<std::string> objects, std::vector<std::string> attributes,
                                  const std::vector<std::pair<std::string, std::string>>& pairs) {
  FormalContext names(objects, attributes, {});
  std::vector<std::pair<std::size_t, std::size_t>> incidence;
  for (const auto& [g, m] : pairs) incidence.emplace_back(*names.object_index(g), *names.attribute_index(m));
  return FormalContext(std::move(objects), std::move(attributes), incidence);
}

// a:{w,x}, b:{x,y}, c:{y,z}
inline FormalContext music_context() {
  return make_context({"a", "b", "c"}, {"w", "x", "y", "z"},
                      {{"a", "w"}, {"a", "x"}, {"b", "x"}, {"b", "y"}, {"c", "y"}, {"c", "z"}});
}

// a:{x}, b:{y}, c:{z}
inline FormalContext movies_context() {
  return make_context({"a", "b", "c"}, {"x", "y", "z"}, {{"a", "x"}, {"b", "y"}, {"c", "z"}});
}

// a:{x}, b:{y}, c:{x,y,z}
inline FormalContext movies3_context() {
  return make_context({"a", "b", "c"}, {"x", "y", "z"}, {{"a", "x"}, {"b", "y"}, {"c", "x"}, {"c", "y"}, {"c", "z"}});
}

/// Concept of `lat` whose extent consists of the named objects.
inline ConceptIndex by_extent(const ConceptLattice& lat, std::initializer_list<const char*> objects) {
  IndexSet extent;
  for (const char* g : objects) extent.insert(*lat.context().object_index(g));
  return lat.find_extent(extent).value();
}

/// Mass from (extent object names, value) pairs; everything else is 0.
inline MassFunction mass_on(const std::shared_ptr<const ConceptLattice>& lat,
                            std::initializer_list<std::pair<std::initializer_list<const char*>, const char*>> entries) {
  std::vector<Rational> values(lat->size());
  for (const auto& [objects, value] : entries) values[by_extent(*lat, objects)] = q(value);
  return MassFunction(lat, std::move(values));
}

}  // namespace cdst::testing
