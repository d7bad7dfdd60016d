// SPDX-License-Identifier: Apache-2.0

#include "sweep_config.hpp"

#include <cstdio>
#include <istream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace leftmost::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string fmt_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

bool to_double(const std::string& s, double& out) {
  try {
    std::size_t pos = 0;
    out = std::stod(s, &pos);
    return pos == s.size();
  } catch (const std::exception&) {
    return false;
  }
}

bool to_index(const std::string& s, Index& out) {
  try {
    std::size_t pos = 0;
    out = std::stoll(s, &pos);
    return pos == s.size();
  } catch (const std::exception&) {
    return false;
  }
}

// One raw entry, with its source line for error messages.
struct Entry {
  std::string value;
  int line = 0;
  bool used = false;
};

}  // namespace

std::string shift_policy_name(ShiftPolicy p) {
  switch (p) {
    case ShiftPolicy::fixed:
      return "fixed";
    case ShiftPolicy::rayleigh_quotient:
      return "rq";
    case ShiftPolicy::renew_on_slowdown:
      return "renew";
  }
  throw std::logic_error("unreachable shift policy");
}

bool parse_sweep_config(std::istream& in, SweepRunConfig& out,
                        std::vector<std::string>& errors) {
  std::map<std::string, Entry> entries;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string text = trim(line);
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
      errors.push_back("line " + std::to_string(lineno) +
                       ": expected `key = value`");
      continue;
    }
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    if (key.empty() || value.empty()) {
      errors.push_back("line " + std::to_string(lineno) +
                       ": expected `key = value`");
      continue;
    }
    auto [it, inserted] = entries.emplace(key, Entry{value, lineno, false});
    if (!inserted) {
      errors.push_back("line " + std::to_string(lineno) + ": duplicate key `" +
                       key + "` (first set on line " +
                       std::to_string(it->second.line) + ")");
    }
  }

  auto fail = [&](const Entry& e, const std::string& key,
                  const std::string& why) {
    errors.push_back("line " + std::to_string(e.line) + ": " + key + ": " +
                     why);
  };
  auto take = [&](const std::string& key) -> Entry* {
    auto it = entries.find(key);
    if (it == entries.end()) return nullptr;
    it->second.used = true;
    return &it->second;
  };
  auto take_double = [&](const std::string& key, double& dst) {
    if (Entry* e = take(key)) {
      if (!to_double(e->value, dst))
        fail(*e, key, "not a number: `" + e->value + "`");
    }
  };
  auto take_index = [&](const std::string& key, Index& dst) {
    if (Entry* e = take(key)) {
      if (!to_index(e->value, dst))
        fail(*e, key, "not an integer: `" + e->value + "`");
    }
  };

  // The model selects every preset, so it resolves first.
  SweepRunConfig cfg;
  bool model_known = false;
  if (Entry* e = take("model")) {
    if (e->value == "abc") {
      cfg.grid.model = SweepModel::abc;
      model_known = true;
    } else if (e->value == "kuramoto") {
      cfg.grid.model = SweepModel::kuramoto;
      model_known = true;
    } else {
      fail(*e, "model", "expected abc or kuramoto, got `" + e->value + "`");
    }
  } else {
    errors.push_back("missing required key `model` (abc or kuramoto)");
  }
  if (model_known) {
    cfg.grid.op = cfg.grid.model == SweepModel::abc ? SeoOperator::dynamo
                                                    : SeoOperator::zero_form;
    cfg.solver = default_sweep_config(cfg.grid.model);
    cfg.options = default_sweep_options(cfg.grid.model);
  }

  if (Entry* e = take("operator")) {
    if (e->value == "dynamo") {
      cfg.grid.op = SeoOperator::dynamo;
    } else if (e->value == "zero-form" || e->value == "zero_form") {
      cfg.grid.op = SeoOperator::zero_form;
    } else {
      fail(*e, "operator", "expected dynamo or zero-form, got `" + e->value +
                               "`");
    }
  }

  take_index("grid_n", cfg.grid.grid_n);
  if (cfg.grid.grid_n < 3)
    errors.push_back("grid_n: must be at least 3, got " +
                     std::to_string(cfg.grid.grid_n));

  auto take_axis = [&](const std::string& prefix, ParamAxis& axis) {
    if (Entry* e = take(prefix + "_name")) {
      axis.name = e->value;
    } else {
      errors.push_back("missing required key `" + prefix + "_name`");
    }
    bool have_start = false;
    if (Entry* e = take(prefix + "_start")) {
      have_start = true;
      if (!to_double(e->value, axis.start))
        fail(*e, prefix + "_start", "not a number: `" + e->value + "`");
    } else {
      errors.push_back("missing required key `" + prefix + "_start`");
    }
    take_double(prefix + "_step", axis.step);
    take_index(prefix + "_count", axis.count);
    if (axis.count < 1)
      errors.push_back(prefix + "_count: must be at least 1, got " +
                       std::to_string(axis.count));
    if (have_start && axis.count > 1 && axis.step == 0.0)
      errors.push_back(prefix + "_step: zero step with " +
                       std::to_string(axis.count) + " points");
  };
  take_axis("axis1", cfg.grid.axis1);
  take_axis("axis2", cfg.grid.axis2);

  take_double("inner_tol", cfg.solver.inner_tol);
  take_double("outer_tol", cfg.solver.outer_tol);
  take_index("max_outer", cfg.solver.max_outer);
  take_index("gmres_restart", cfg.solver.gmres_restart);
  take_index("gmres_max_total", cfg.solver.gmres_max_total);
  if (Entry* e = take("shift_policy")) {
    if (e->value == "fixed") {
      cfg.solver.shift_policy = ShiftPolicy::fixed;
    } else if (e->value == "rq") {
      cfg.solver.shift_policy = ShiftPolicy::rayleigh_quotient;
    } else if (e->value == "renew") {
      cfg.solver.shift_policy = ShiftPolicy::renew_on_slowdown;
    } else {
      fail(*e, "shift_policy",
           "expected fixed, rq, or renew, got `" + e->value + "`");
    }
  }
  take_double("slowdown", cfg.solver.slowdown_factor);
  if (Entry* e = take("seed")) {
    try {
      std::size_t pos = 0;
      cfg.solver.seed = std::stoull(e->value, &pos);
      if (pos != e->value.size()) throw std::invalid_argument(e->value);
    } catch (const std::exception&) {
      fail(*e, "seed", "not an unsigned integer: `" + e->value + "`");
    }
  }

  take_double("eigs_tol", cfg.options.eigs_tol);
  take_index("eigs_dim", cfg.options.eigs_dim);
  take_index("eigs_max_restarts", cfg.options.eigs_max_restarts);
  if (Entry* e = take("workers")) {
    Index w = 0;
    if (!to_index(e->value, w)) {
      fail(*e, "workers", "not an integer: `" + e->value + "`");
    } else if (w < 1) {
      fail(*e, "workers", "must be at least 1");
    } else {
      cfg.options.workers = static_cast<int>(w);
    }
  }

  if (cfg.solver.inner_tol <= 0.0)
    errors.push_back("inner_tol: must be positive");
  if (cfg.solver.outer_tol <= 0.0)
    errors.push_back("outer_tol: must be positive");
  if (cfg.options.eigs_tol <= 0.0) errors.push_back("eigs_tol: must be positive");
  if (cfg.solver.max_outer < 1) errors.push_back("max_outer: must be at least 1");

  // Whatever is left is either a pinned model parameter or a typo.
  for (auto& [key, entry] : entries) {
    if (entry.used) continue;
    if (key.rfind("fixed_", 0) == 0 && key.size() > 6) {
      double v = 0.0;
      if (to_double(entry.value, v)) {
        cfg.grid.fixed_params[key.substr(6)] = v;
      } else {
        fail(entry, key, "not a number: `" + entry.value + "`");
      }
    } else {
      fail(entry, key, "unknown key");
    }
  }

  if (!errors.empty()) return false;
  out = std::move(cfg);
  return true;
}

std::string render_manifest(const SweepRunConfig& cfg) {
  std::ostringstream os;
  os << "# leftmost sweep manifest (version " << LEFTMOST_VERSION << ")\n";
  os << "# planned points: " << cfg.grid.axis1.count * cfg.grid.axis2.count
     << "\n";
  os << "model = " << (cfg.grid.model == SweepModel::abc ? "abc" : "kuramoto")
     << "\n";
  os << "operator = "
     << (cfg.grid.op == SeoOperator::dynamo ? "dynamo" : "zero-form") << "\n";
  os << "grid_n = " << cfg.grid.grid_n << "\n";
  auto axis = [&](const std::string& prefix, const ParamAxis& a) {
    os << prefix << "_name = " << a.name << "\n";
    os << prefix << "_start = " << fmt_real(a.start) << "\n";
    os << prefix << "_step = " << fmt_real(a.step) << "\n";
    os << prefix << "_count = " << a.count << "\n";
  };
  axis("axis1", cfg.grid.axis1);
  axis("axis2", cfg.grid.axis2);
  for (const auto& [name, value] : cfg.grid.fixed_params)
    os << "fixed_" << name << " = " << fmt_real(value) << "\n";
  os << "inner_tol = " << fmt_real(cfg.solver.inner_tol) << "\n";
  os << "outer_tol = " << fmt_real(cfg.solver.outer_tol) << "\n";
  os << "max_outer = " << cfg.solver.max_outer << "\n";
  os << "gmres_restart = " << cfg.solver.gmres_restart << "\n";
  os << "gmres_max_total = " << cfg.solver.gmres_max_total << "\n";
  os << "shift_policy = " << shift_policy_name(cfg.solver.shift_policy)
     << "\n";
  os << "slowdown = " << fmt_real(cfg.solver.slowdown_factor) << "\n";
  os << "seed = " << cfg.solver.seed << "\n";
  os << "eigs_tol = " << fmt_real(cfg.options.eigs_tol) << "\n";
  os << "eigs_dim = " << cfg.options.eigs_dim << "\n";
  os << "eigs_max_restarts = " << cfg.options.eigs_max_restarts << "\n";
  os << "workers = " << cfg.options.workers << "\n";
  return os.str();
}

}  // namespace leftmost::cli
