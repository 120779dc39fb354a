#pragma once

#include <stdexcept>
#include <string>

namespace srm {

// Error categories surfaced to the CLI as a machine-parsable prefix.
enum class errc {
  schema,
  parse,
  empty_dataset,
  config,
  unknown_covariate,
  degenerate,
  alignment,
  scenario,
  empty_samples,
  chain_failure,
  internal,
  io,
};

inline const char* errc_name(errc k) {
  switch (k) {
    case errc::schema: return "schema";
    case errc::parse: return "parse";
    case errc::empty_dataset: return "empty-dataset";
    case errc::config: return "config";
    case errc::unknown_covariate: return "unknown-covariate";
    case errc::degenerate: return "degenerate";
    case errc::alignment: return "alignment";
    case errc::scenario: return "scenario";
    case errc::empty_samples: return "empty-samples";
    case errc::chain_failure: return "chain-failure";
    case errc::internal: return "internal";
    case errc::io: return "io";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(errc kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}

  errc kind() const { return kind_; }
  const char* kind_name() const { return errc_name(kind_); }

 private:
  errc kind_;
};

}  // namespace srm
