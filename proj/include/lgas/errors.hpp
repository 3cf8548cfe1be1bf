#pragma once

#include <stdexcept>

namespace lgas {

/// Decoded populations disagree with the conserved total mass.
class ConservationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// The ancilla |0> branch vanished, so the collision cannot be post-selected.
class PostSelectionError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A run produced non-finite or negative populations.
class InstabilityError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace lgas
