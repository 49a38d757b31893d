//  Copyright 2026 The fintop Authors
//
//  Licensed under the Apache License, Version 2.0 (the "License");
//  you may not use this file except in compliance with the License.
//  You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
//  Unless required by applicable law or agreed to in writing, software
//  distributed under the License is distributed on an "AS IS" BASIS,
//  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//  See the License for the specific language governing permissions and
//  limitations under the License.

#ifndef FINTOP_ERROR_HPP
#define FINTOP_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fintop/point_set.hpp"

namespace fintop {

enum class ErrorKind {
  // malformed input
  InvalidInput,
  CapExceeded,
  // topology
  MissingEmpty,
  MissingFull,
  NotClosedUnderUnion,
  NotClosedUnderIntersection,
  InvalidPreorder,
  NotContinuous,
  NotOpen,
  NotT0,
  NotLocallyClosed,
  // lattice
  NotSober,
  PreservationFailure,
  ReducibleClosedSet,
  // action
  DomainMismatch,
  CoverFailure,
  CompatibilityFailure,
  MeetFailure,
  // completion
  NotMonotone,
  BadEndpoints,
  // ktheory
  NotComposable,
  NotWellDefined,
  ShapeMismatch,
  SquareNotCommuting,
  // a proven identity failed to hold; signals a bug or corrupted input
  InternalInconsistency,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::MissingEmpty: return "MissingEmpty";
    case ErrorKind::MissingFull: return "MissingFull";
    case ErrorKind::NotClosedUnderUnion: return "NotClosedUnderUnion";
    case ErrorKind::NotClosedUnderIntersection: return "NotClosedUnderIntersection";
    case ErrorKind::InvalidPreorder: return "InvalidPreorder";
    case ErrorKind::NotContinuous: return "NotContinuous";
    case ErrorKind::NotOpen: return "NotOpen";
    case ErrorKind::NotT0: return "NotT0";
    case ErrorKind::NotLocallyClosed: return "NotLocallyClosed";
    case ErrorKind::NotSober: return "NotSober";
    case ErrorKind::PreservationFailure: return "PreservationFailure";
    case ErrorKind::ReducibleClosedSet: return "ReducibleClosedSet";
    case ErrorKind::DomainMismatch: return "DomainMismatch";
    case ErrorKind::CoverFailure: return "CoverFailure";
    case ErrorKind::CompatibilityFailure: return "CompatibilityFailure";
    case ErrorKind::MeetFailure: return "MeetFailure";
    case ErrorKind::NotMonotone: return "NotMonotone";
    case ErrorKind::BadEndpoints: return "BadEndpoints";
    case ErrorKind::NotComposable: return "NotComposable";
    case ErrorKind::NotWellDefined: return "NotWellDefined";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::SquareNotCommuting: return "SquareNotCommuting";
    case ErrorKind::InternalInconsistency: return "InternalInconsistency";
  }
  return "Unknown";
}

/// True for errors caused by malformed input or flags rather than a failed
/// mathematical check.
constexpr bool is_input_error(ErrorKind kind) {
  return kind == ErrorKind::InvalidInput || kind == ErrorKind::CapExceeded;
}

/// Every failure in the library is reported through this exception. The
/// witness list carries the offending sets (for instance the pair of opens
/// whose union is missing) when the failing check has one.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::vector<PointSet> witness = {})
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind),
        witness_(std::move(witness)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::vector<PointSet>& witness() const noexcept { return witness_; }

 private:
  ErrorKind kind_;
  std::vector<PointSet> witness_;
};

}  // namespace fintop

#endif  // FINTOP_ERROR_HPP
