// Text formats for states and constructor parameters.
//
// State file:
//   modes=<n> cutoff=<N>
//   <n1>,...,<nk> <re> <im>        one line per nonzero amplitude
//
// Parameter file: key=value lines, masses and rho comma-separated.

#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <variant>

#include "fockweyl/entangled.hpp"
#include "fockweyl/fock.hpp"

namespace fockweyl::io {

/// Thrown for malformed input files.
class format_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void write_state(std::ostream& out, const StateVector& state);

/// Lines may come in any order; duplicate or out-of-range indices are rejected.
/// Missing indices have amplitude zero.
StateVector read_state(std::istream& in);

using KeyValues = std::map<std::string, std::string>;

/// Rejects lines without '=', empty keys and repeated keys; blank lines are skipped.
KeyValues read_key_values(std::istream& in);

using FamilyParams =
    std::variant<entangled::EtaParam, entangled::BipartiteEprParam, entangled::MultiEprParam>;

void write_params(std::ostream& out, const FamilyParams& params);
FamilyParams params_from_key_values(const KeyValues& kv);

/// The exponent of the state the parameters describe. MultiEprParam with three
/// masses goes through the explicit tripartite constructor.
ExponentSpec exponent_of(const FamilyParams& params);

/// Writes through a temporary file in the same directory, then renames it over `path`.
void write_atomically(const std::filesystem::path& path,
                      const std::function<void(std::ostream&)>& writer);

}  // namespace fockweyl::io
