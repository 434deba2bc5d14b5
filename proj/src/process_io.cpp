/**
 * This code is part of qclass.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "qclass/process_io.hpp"

#include <json.hpp>

namespace qclass {

namespace {

using json = nlohmann::ordered_json;

struct ErrorList {
  std::vector<std::string> errors;

  void add(const std::string &msg) { errors.push_back(msg); }
  void throw_if_any() const {
    if (errors.empty()) return;
    std::string msg = "invalid process description:";
    for (const auto &e : errors) msg += "\n  - " + e;
    throw ParseError(msg);
  }
};

bool is_complex_entry(const json &j) {
  return j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number();
}

// A matrix is an array of rows; every entry is a strict [re, im] pair so
// that a list of matrices can never be mistaken for a single matrix.
bool is_matrix_shape(const json &j) {
  if (!j.is_array() || j.empty()) return false;
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  if (cols == 0) return false;
  for (const auto &row : j) {
    if (!row.is_array() || row.size() != cols) return false;
    for (const auto &entry : row) {
      if (!is_complex_entry(entry)) return false;
    }
  }
  return true;
}

bool is_matrix_list_shape(const json &j) {
  if (!j.is_array() || j.empty()) return false;
  for (const auto &item : j) {
    if (!is_matrix_shape(item) && !item.is_string()) return false;
  }
  return true;
}

cmatrix_t named_matrix(const std::string &name, Eigen::Index d, const std::string &where) {
  if (name == "identity") return identity_matrix(d);
  if (name == "maximally_mixed") return identity_matrix(d) / static_cast<double>(d);
  if (name == "hadamard" || name == "sigma_x" || name == "sigma_y" || name == "sigma_z") {
    if (d != 2) {
      throw ParseError(where + ": named matrix '" + name + "' requires dimension 2");
    }
    if (name == "hadamard") return hadamard();
    if (name == "sigma_x") return pauli_x();
    if (name == "sigma_y") return pauli_y();
    return pauli_z();
  }
  if (name.rfind("proj", 0) == 0) {
    try {
      const Eigen::Index k = std::stol(name.substr(4));
      if (k >= 0 && k < d) return projector(basis_ket(d, k));
    } catch (const std::exception &) {
    }
    throw ParseError(where + ": projector index in '" + name + "' outside 0.." +
                     std::to_string(d - 1));
  }
  throw ParseError(where + ": unknown named matrix '" + name + "'");
}

cvector_t named_ket(const std::string &name, Eigen::Index d, const std::string &where) {
  if (name.rfind("ket", 0) == 0) {
    try {
      const Eigen::Index k = std::stol(name.substr(3));
      if (k >= 0 && k < d) return basis_ket(d, k);
    } catch (const std::exception &) {
    }
    throw ParseError(where + ": basis index in '" + name + "' outside 0.." +
                     std::to_string(d - 1));
  }
  if (name == "plus" || name == "minus" || name == "plus_i" || name == "minus_i") {
    if (d != 2) {
      throw ParseError(where + ": named state '" + name + "' requires dimension 2");
    }
    if (name == "plus") return ket_plus();
    if (name == "minus") return ket_minus();
    if (name == "plus_i") return ket_plus_i();
    return ket_minus_i();
  }
  throw ParseError(where + ": unknown named state '" + name + "'");
}

cmatrix_t parse_matrix(const json &j, Eigen::Index d, const std::string &where) {
  if (j.is_string()) return named_matrix(j.get<std::string>(), d, where);
  if (!is_matrix_shape(j)) {
    throw ParseError(where + ": expected a matrix (rows of [re, im] pairs) or a named matrix");
  }
  const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
  const Eigen::Index cols = static_cast<Eigen::Index>(j[0].size());
  cmatrix_t m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      m(r, c) = complex_t(j[r][c][0].get<double>(), j[r][c][1].get<double>());
    }
  }
  if (!is_finite(m)) throw ParseError(where + ": entries must be finite");
  return m;
}

cvector_t parse_ket(const json &j, Eigen::Index d, const std::string &where) {
  if (j.is_string()) return named_ket(j.get<std::string>(), d, where);
  if (!j.is_array() || j.empty()) {
    throw ParseError(where + ": expected a vector of [re, im] pairs or a named state");
  }
  cvector_t v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t k = 0; k < j.size(); ++k) {
    if (!is_complex_entry(j[k])) {
      throw ParseError(where + ": entries must be [re, im] pairs");
    }
    v(static_cast<Eigen::Index>(k)) = complex_t(j[k][0].get<double>(), j[k][1].get<double>());
  }
  return v;
}

cmatrix_t parse_initial(const json &j, Eigen::Index d) {
  const std::string where = "initial state";
  if (j.is_string()) {
    const std::string name = j.get<std::string>();
    if (name == "maximally_mixed" || name == "identity" || name.rfind("proj", 0) == 0) {
      return named_matrix(name, d, where);
    }
    return projector(named_ket(name, d, where));
  }
  return parse_matrix(j, d, where);
}

json ket_to_json(const cvector_t &v) {
  json entries = json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    entries.push_back({v(k).real(), v(k).imag()});
  }
  return entries;
}

// Matrices are laid out one row per line; nlohmann's compact dump keeps the
// shortest round-trip representation of every double.
std::string matrix_text(const cmatrix_t &m, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  const std::string inner(static_cast<std::size_t>(indent) + 2, ' ');
  std::string out = "[\n";
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      row.push_back({m(r, c).real(), m(r, c).imag()});
    }
    out += inner + row.dump();
    if (r + 1 < m.rows()) out += ",";
    out += "\n";
  }
  out += pad + "]";
  return out;
}

}  // namespace

AnalyzeConfig ProcessFile::config(double tol) const {
  AnalyzeConfig cfg;
  cfg.tol = tol;
  cfg.initial_set = initial_set;
  cfg.ncgd_basis = fixed_basis;
  return cfg;
}

ProcessFile parse_process_file(const std::string &text, double tol) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception &e) {
    throw ParseError(std::string("syntax error: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("top level must be a JSON object");

  if (!doc.contains("dimension") || !doc["dimension"].is_number_integer() ||
      doc["dimension"].get<long>() < 1) {
    throw ParseError("'dimension' must be a positive integer");
  }
  const Eigen::Index d = doc["dimension"].get<Eigen::Index>();

  ProcessFile file;
  file.process.dim = d;
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) throw ParseError("'name' must be a string");
    file.process.name = doc["name"].get<std::string>();
  }

  ErrorList errors;

  if (!doc.contains("initial")) {
    errors.add("missing 'initial' state");
  } else {
    try {
      file.process.initial = DensityMatrix{parse_initial(doc["initial"], d), true};
    } catch (const ParseError &e) {
      errors.add(e.what());
    }
  }

  if (doc.contains("dynamics")) {
    if (!doc["dynamics"].is_array()) {
      errors.add("'dynamics' must be an array of Kraus sets");
    } else {
      std::size_t index = 0;
      for (const auto &item : doc["dynamics"]) {
        ++index;
        std::string where = "dynamics " + std::to_string(index);
        KrausSet set;
        try {
          const json *kraus = nullptr;
          if (item.is_object()) {
            if (item.contains("name") && item["name"].is_string()) {
              where += " ('" + item["name"].get<std::string>() + "')";
            }
            if (!item.contains("kraus")) {
              throw ParseError(where + ": missing 'kraus' list");
            }
            kraus = &item["kraus"];
          } else {
            kraus = &item;
          }
          if (!kraus->is_array() || kraus->empty()) {
            throw ParseError(where + ": 'kraus' must be a non-empty array of matrices");
          }
          std::size_t op_index = 0;
          for (const auto &op : *kraus) {
            ++op_index;
            set.ops.push_back(
                parse_matrix(op, d, where + ", Kraus " + std::to_string(op_index)));
          }
          file.process.dynamics.push_back(std::move(set));
        } catch (const ParseError &e) {
          errors.add(e.what());
        }
      }
    }
  }

  if (!doc.contains("instruments") || !doc["instruments"].is_array() ||
      doc["instruments"].empty()) {
    errors.add("'instruments' must be a non-empty array");
  } else {
    std::size_t index = 0;
    for (const auto &item : doc["instruments"]) {
      ++index;
      const std::string where = "instrument " + std::to_string(index);
      Instrument instrument;
      if (!item.is_object() || item.empty()) {
        errors.add(where + ": must be an object mapping outcome labels to matrices");
        file.process.instruments.push_back(std::move(instrument));
        continue;
      }
      for (const auto &[label, value] : item.items()) {
        const std::string element = where + ", outcome '" + label + "'";
        try {
          if (is_matrix_list_shape(value)) {
            throw ParseError(element + ": holds " + std::to_string(value.size()) +
                             " Kraus operators; every instrument element must be a single"
                             " Kraus operator");
          }
          instrument.elements.emplace_back(label, parse_matrix(value, d, element));
        } catch (const ParseError &e) {
          errors.add(e.what());
        }
      }
      file.process.instruments.push_back(std::move(instrument));
    }
  }

  if (doc.contains("initial_set")) {
    if (!doc["initial_set"].is_array() || doc["initial_set"].empty()) {
      errors.add("'initial_set' must be a non-empty array of matrices");
    } else {
      std::size_t index = 0;
      for (const auto &item : doc["initial_set"]) {
        ++index;
        try {
          file.initial_set.push_back(
              parse_matrix(item, d, "initial_set " + std::to_string(index)));
        } catch (const ParseError &e) {
          errors.add(e.what());
        }
      }
    }
  }

  if (doc.contains("fixed_basis")) {
    const auto &basis = doc["fixed_basis"];
    if (basis.is_string() && basis.get<std::string>() == "computational") {
      for (Eigen::Index k = 0; k < d; ++k) file.fixed_basis.push_back(basis_ket(d, k));
    } else if (basis.is_array()) {
      std::size_t index = 0;
      for (const auto &item : basis) {
        ++index;
        try {
          file.fixed_basis.push_back(
              parse_ket(item, d, "fixed_basis " + std::to_string(index)));
        } catch (const ParseError &e) {
          errors.add(e.what());
        }
      }
    } else {
      errors.add("'fixed_basis' must be \"computational\" or an array of vectors");
    }
  }

  errors.throw_if_any();

  const ValidationReport report = validate_process(file.process, tol);
  if (!report.valid()) {
    ErrorList invalid;
    for (const auto &v : report.violations) invalid.add(v);
    invalid.throw_if_any();
  }
  return file;
}

MarkovProcess parse_process(const std::string &text, double tol) {
  return parse_process_file(text, tol).process;
}

std::string serialize_process_file(const ProcessFile &file) {
  std::string out = "{\n";
  if (!file.process.name.empty()) {
    out += "  \"name\": " + json(file.process.name).dump() + ",\n";
  }
  out += "  \"dimension\": " + std::to_string(file.process.dim) + ",\n";
  out += "  \"initial\": " + matrix_text(file.process.initial.mat, 2) + ",\n";

  out += "  \"dynamics\": [";
  for (std::size_t i = 0; i < file.process.dynamics.size(); ++i) {
    out += i ? ",\n" : "\n";
    out += "    {\"kraus\": [";
    const auto &ops = file.process.dynamics[i].ops;
    for (std::size_t l = 0; l < ops.size(); ++l) {
      out += l ? ",\n" : "\n";
      out += "      " + matrix_text(ops[l], 6);
    }
    out += "\n    ]}";
  }
  out += file.process.dynamics.empty() ? "],\n" : "\n  ],\n";

  out += "  \"instruments\": [";
  for (std::size_t i = 0; i < file.process.instruments.size(); ++i) {
    out += i ? ",\n" : "\n";
    out += "    {";
    const auto &elements = file.process.instruments[i].elements;
    for (std::size_t k = 0; k < elements.size(); ++k) {
      out += k ? ",\n" : "\n";
      out += "      " + json(elements[k].first).dump() + ": " +
             matrix_text(elements[k].second, 6);
    }
    out += "\n    }";
  }
  out += "\n  ]";

  if (!file.initial_set.empty()) {
    out += ",\n  \"initial_set\": [";
    for (std::size_t i = 0; i < file.initial_set.size(); ++i) {
      out += i ? ",\n" : "\n";
      out += "    " + matrix_text(file.initial_set[i], 4);
    }
    out += "\n  ]";
  }
  if (!file.fixed_basis.empty()) {
    out += ",\n  \"fixed_basis\": [";
    for (std::size_t i = 0; i < file.fixed_basis.size(); ++i) {
      out += i ? ",\n" : "\n";
      out += "    " + ket_to_json(file.fixed_basis[i]).dump();
    }
    out += "\n  ]";
  }
  out += "\n}\n";
  return out;
}

}  // namespace qclass
