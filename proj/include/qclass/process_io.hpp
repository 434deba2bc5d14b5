/**
 * This code is part of qclass.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef QCLASS_PROCESS_IO_HPP
#define QCLASS_PROCESS_IO_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "qclass/classicality.hpp"

namespace qclass {

// Raised on malformed documents and on processes violating an invariant;
// the message lists every violation found.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string &msg) : std::runtime_error(msg) {}
};

// A process file bundles the process with optional analysis inputs: an
// override for the attainable-state initial set and a fixed measurement
// basis for the dephasing criterion.
struct ProcessFile {
  MarkovProcess process;
  std::vector<cmatrix_t> initial_set;
  std::vector<cvector_t> fixed_basis;

  AnalyzeConfig config(double tol = default_tol) const;
};

// Parses and fully validates a JSON process description. See
// docs/process-format.md for the schema. Throws ParseError.
ProcessFile parse_process_file(const std::string &text, double tol = default_tol);

// Convenience wrapper returning only the validated process.
MarkovProcess parse_process(const std::string &text, double tol = default_tol);

// Canonical JSON serialisation; parse(serialize(x)) reproduces x exactly.
std::string serialize_process_file(const ProcessFile &file);

}  // namespace qclass

#endif
