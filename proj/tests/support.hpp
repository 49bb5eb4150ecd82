#pragma once

#include <string>
#include <vector>

#include "localh/localh.hpp"

namespace test_support {

using namespace localh;

inline Triangulation corpus(const std::string& name) { return to_triangulation(builtin_corpus(name)); }

inline std::vector<Triangulation> full_corpus() {
  std::vector<Triangulation> out;
  for (const auto& n : corpus_names()) out.push_back(corpus(n));
  return out;
}

inline Face face(const Triangulation& t, std::vector<std::string> labels) { return t.face_of(labels); }

template <class F>
SpecialLsop<F> lsop_for(const F& field, const Triangulation& t, Face e, std::uint64_t seed = 7) {
  return sample_lsop(field, t, LocalFrame::of(t, e), seed);
}

}  // namespace test_support
