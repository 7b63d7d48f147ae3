#pragma once

#include <functional>
#include <initializer_list>
#include <vector>

#include <gtest/gtest.h>

#include "flab/error.hpp"
#include "flab/geometry.hpp"
#include "flab/polymethod.hpp"
#include "oracle.hpp"

namespace testing_util {

/// Code of the flab::Error thrown by fn; records a failure if none is thrown.
inline flab::Errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const flab::Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return flab::Errc::ParseError;
}

inline flab::Point pt(const flab::Field& f, std::initializer_list<std::uint32_t> codes) {
  flab::Point p;
  for (auto c : codes) p.push_back(f.element(c));
  return p;
}

/// Points whose index bit is set in mask.
inline flab::PointSet subset(const flab::AffineSpace& space, std::uint64_t mask) {
  std::vector<std::uint64_t> idx;
  for (std::uint64_t i = 0; i < space.size(); ++i) {
    if (mask >> i & 1U) idx.push_back(i);
  }
  return flab::PointSet::from_indices(space, idx);
}

inline std::set<long> oracle_set(const flab::PointSet& s) {
  return {s.indices().begin(), s.indices().end()};
}

inline flab::Polynomial from_oracle(const flab::Field& f, std::size_t n, const oracle::Poly& poly) {
  flab::Polynomial p(f, n);
  for (const auto& [e, c] : poly) {
    p.add_term(flab::Multidegree(e.begin(), e.end()), f.from_integer(c));
  }
  return p;
}

using oracle::random_poly;

}  // namespace testing_util
