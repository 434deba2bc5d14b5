/**
 * This code is part of qclass.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef QCLASS_REPORT_IO_HPP
#define QCLASS_REPORT_IO_HPP

#include <string>

#include "qclass/classicality.hpp"

namespace qclass {

enum class ReportFormat { text, json };

// Deterministic rendering of a report: identical reports produce
// byte-identical output. The JSON format is stable-keyed and can be read
// back with report_from_json.
std::string emit_report(const ClassicalityReport &report, ReportFormat format);

ClassicalityReport report_from_json(const std::string &text);

// One row per outcome sequence plus a total row; probabilities are clamped
// to [0, 1] and printed with 12 significant digits.
std::string emit_distribution(const JointDistribution &dist);

}  // namespace qclass

#endif
