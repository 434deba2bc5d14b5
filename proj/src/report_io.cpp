/**
 * This code is part of qclass.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "qclass/report_io.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace qclass {

namespace {

using json = nlohmann::ordered_json;

std::string fmt(double value) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

json sequence_to_json(const OutcomeSequence &seq) {
  json out = json::array();
  for (const auto &[t, label] : seq.outcomes) {
    out.push_back(json::array({t, label}));
  }
  return out;
}

OutcomeSequence sequence_from_json(const json &j) {
  OutcomeSequence seq;
  for (const auto &item : j) {
    seq.push_back(item[0].get<int>(), item[1].get<std::string>());
  }
  return seq;
}

std::string emit_text(const ClassicalityReport &report) {
  std::ostringstream out;
  out << "process: " << (report.process_name.empty() ? "(unnamed)" : report.process_name)
      << "  (dimension " << report.dim << ", " << report.times << " times)\n";
  out << "tolerance: " << fmt(report.tol) << "\n";
  out << "hermitian instruments:";
  for (std::size_t i = 0; i < report.instrument_hermitian.size(); ++i) {
    out << " t" << i + 1 << "=" << (report.instrument_hermitian[i] ? "yes" : "no");
  }
  out << "\n\n";

  std::size_t name_width = 9;
  for (const auto &r : report.results) name_width = std::max(name_width, r.criterion.size());

  out << "criterion";
  out << std::string(name_width - 9 + 2, ' ') << "verdict  max residual    contexts\n";
  for (const auto &r : report.results) {
    out << r.criterion << std::string(name_width - r.criterion.size() + 2, ' ');
    if (r.skipped) {
      out << "SKIP     -               -         (" << r.skip_reason << ")";
    } else {
      const std::string residual = fmt(r.max_residual);
      out << (r.pass ? "PASS" : "FAIL") << "     " << residual
          << std::string(residual.size() < 16 ? 16 - residual.size() : 1, ' ')
          << r.contexts.size();
      if (!r.flags.empty()) {
        out << "  [";
        for (std::size_t i = 0; i < r.flags.size(); ++i) {
          if (i) out << ",";
          out << r.flags[i];
        }
        out << "]";
      }
    }
    out << "\n";
  }

  out << "\naudits:\n";
  for (const auto &a : report.audits) {
    out << "  " << a.rule << ": ";
    if (a.violated) {
      out << "VIOLATED";
    } else if (a.applicable) {
      out << "ok";
    } else {
      out << "n/a";
    }
    if (!a.note.empty()) out << " (" << a.note << ")";
    out << "\n";
  }
  const auto violations = report.audit_violations();
  out << "audit violations: " << violations.size() << "\n";
  return out.str();
}

json context_to_json(const ContextRecord &ctx) {
  json j = json::object();
  j["time"] = ctx.time;
  j["history"] = sequence_to_json(ctx.history);
  j["outcome"] = ctx.outcome;
  j["future"] = sequence_to_json(ctx.future);
  j["residual"] = ctx.residual;
  if (ctx.operational_residual) j["operational_residual"] = *ctx.operational_residual;
  j["flags"] = ctx.flags;
  return j;
}

ContextRecord context_from_json(const json &j) {
  ContextRecord ctx;
  ctx.time = j["time"].get<int>();
  ctx.history = sequence_from_json(j["history"]);
  ctx.outcome = j["outcome"].get<std::string>();
  ctx.future = sequence_from_json(j["future"]);
  ctx.residual = j["residual"].get<double>();
  if (j.contains("operational_residual")) {
    ctx.operational_residual = j["operational_residual"].get<double>();
  }
  ctx.flags = j["flags"].get<std::vector<std::string>>();
  return ctx;
}

std::string emit_json(const ClassicalityReport &report) {
  json doc = json::object();
  doc["process"] = {{"name", report.process_name},
                    {"dimension", report.dim},
                    {"times", report.times}};
  json hermitian = json::array();
  for (bool h : report.instrument_hermitian) hermitian.push_back(h);
  doc["process"]["instrument_hermitian"] = std::move(hermitian);
  doc["tolerance"] = report.tol;

  json results = json::array();
  for (const auto &r : report.results) {
    json item = json::object();
    item["criterion"] = r.criterion;
    item["skipped"] = r.skipped;
    if (r.skipped) {
      item["skip_reason"] = r.skip_reason;
    } else {
      item["pass"] = r.pass;
      item["max_residual"] = r.max_residual;
      item["tolerance"] = r.tol;
      item["flags"] = r.flags;
      json contexts = json::array();
      for (const auto &ctx : r.contexts) contexts.push_back(context_to_json(ctx));
      item["contexts"] = std::move(contexts);
    }
    results.push_back(std::move(item));
  }
  doc["results"] = std::move(results);

  json audits = json::array();
  for (const auto &a : report.audits) {
    audits.push_back(json{{"rule", a.rule},
                          {"applicable", a.applicable},
                          {"violated", a.violated},
                          {"note", a.note}});
  }
  doc["audits"] = std::move(audits);
  return doc.dump(2) + "\n";
}

}  // namespace

std::string emit_report(const ClassicalityReport &report, ReportFormat format) {
  return format == ReportFormat::text ? emit_text(report) : emit_json(report);
}

ClassicalityReport report_from_json(const std::string &text) {
  const json doc = json::parse(text);
  ClassicalityReport report;
  report.process_name = doc["process"]["name"].get<std::string>();
  report.dim = doc["process"]["dimension"].get<Eigen::Index>();
  report.times = doc["process"]["times"].get<int>();
  report.instrument_hermitian =
      doc["process"]["instrument_hermitian"].get<std::vector<bool>>();
  report.tol = doc["tolerance"].get<double>();

  for (const auto &item : doc["results"]) {
    CheckResult r;
    r.criterion = item["criterion"].get<std::string>();
    r.skipped = item["skipped"].get<bool>();
    if (r.skipped) {
      r.skip_reason = item["skip_reason"].get<std::string>();
    } else {
      r.pass = item["pass"].get<bool>();
      r.max_residual = item["max_residual"].get<double>();
      r.tol = item["tolerance"].get<double>();
      r.flags = item["flags"].get<std::vector<std::string>>();
      for (const auto &ctx : item["contexts"]) r.contexts.push_back(context_from_json(ctx));
    }
    report.results.push_back(std::move(r));
  }

  for (const auto &item : doc["audits"]) {
    AuditRecord a;
    a.rule = item["rule"].get<std::string>();
    a.applicable = item["applicable"].get<bool>();
    a.violated = item["violated"].get<bool>();
    a.note = item["note"].get<std::string>();
    report.audits.push_back(std::move(a));
  }
  return report;
}

std::string emit_distribution(const JointDistribution &dist) {
  std::ostringstream out;
  for (const auto &[seq, prob] : dist.table) {
    out << "P(" << seq.str() << ") = " << fmt(std::clamp(prob, 0.0, 1.0)) << "\n";
  }
  out << "total = " << fmt(std::clamp(dist.total(), 0.0, 1.0)) << "\n";
  return out.str();
}

}  // namespace qclass
