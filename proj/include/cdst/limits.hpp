#pragma once

#include <cstddef>
#include <cstdlib>
#include <string>
#include <string_view>

#include "cdst/error.hpp"

namespace cdst {

/// Desk-scale bounds. Every construction here is exponential in something;
/// these keep runs interactive. Setting CDST_IGNORE_BOUNDS=1 lifts them (at
/// your own risk); the 256-element index-set width still applies.
struct Limits {
  std::size_t max_objects = 24;
  std::size_t max_concepts = 1024;
  std::size_t max_set_carrier = 12;
  std::size_t max_represent_carrier = 4;
  std::size_t max_frame_concepts = 8;
  std::size_t max_frame_objects = 24;
  std::size_t max_axiom_carrier = 5;
  std::size_t max_axiom_arity = 3;

  static Limits desk() { return {}; }

  static Limits unbounded() {
    Limits l;
    l.max_objects = 256;
    l.max_concepts = 1U << 16;
    l.max_set_carrier = 20;
    l.max_represent_carrier = 6;
    l.max_frame_concepts = 16;
    l.max_frame_objects = 256;
    l.max_axiom_carrier = 8;
    l.max_axiom_arity = 5;
    return l;
  }

  static Limits current() {
    const char* flag = std::getenv("CDST_IGNORE_BOUNDS");
    if (flag != nullptr && std::string_view(flag) != "" && std::string_view(flag) != "0") return unbounded();
    return desk();
  }
};

inline void require_within(std::size_t value, std::size_t bound, std::string_view what) {
  if (value > bound) {
    throw CapacityError(std::string(what) + " is " + std::to_string(value) + ", above the bound of " +
                        std::to_string(bound) + " (set CDST_IGNORE_BOUNDS=1 to lift)");
  }
}

}  // namespace cdst
