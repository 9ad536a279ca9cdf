#include "trimodal/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

namespace trimodal {

namespace {

using nlohmann::json;

void append_array(std::string& out, const double* v, size_t n) {
  out += '[';
  for (size_t i = 0; i < n; ++i) {
    if (i) out += ',';
    out += format_g17(v[i]);
  }
  out += ']';
}

std::string params_json(const Params& p) {
  std::string out = "{\"mu\":" + format_g17(p.mu) +
                    ",\"alpha\":" + format_g17(p.alpha) +
                    ",\"lambda\":" + format_g17(p.lambda) +
                    ",\"xi\":" + format_g17(p.xi) + "}";
  return out;
}

Params params_from(const json& j) {
  Params p;
  p.mu = j.at("mu").get<double>();
  p.alpha = j.at("alpha").get<double>();
  p.lambda = j.at("lambda").get<double>();
  p.xi = j.at("xi").get<double>();
  return p;
}

Regime regime_from(const std::string& name) {
  if (name == "trigonometric") return Regime::Trigonometric;
  if (name == "hyperbolic") return Regime::Hyperbolic;
  if (name == "degenerate") return Regime::Degenerate;
  throw std::invalid_argument("unknown regime name: " + name);
}

const char* bool_str(bool b) { return b ? "true" : "false"; }

}  // namespace

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string kernel_spec_to_json(const KernelSpec& spec,
                                const TransversalityReport& rep) {
  std::string out = "{\n";
  out += "  \"k\": [" + std::to_string(spec.k[0]) + "," +
         std::to_string(spec.k[1]) + "," + std::to_string(spec.k[2]) + "],\n";
  out += "  \"a\": " + format_g17(spec.a) + ",\n";
  out += "  \"params\": " + params_json(spec.params) + ",\n";
  out += "  \"thetas\": [";
  for (int j = 0; j < 3; ++j) {
    const auto& tv = spec.thetas[static_cast<size_t>(j)];
    if (j) out += ",";
    out += "{\"k\":" + std::to_string(tv.k) +
           ",\"theta\":" + format_g17(tv.theta) + ",\"regime\":\"" +
           regime_name(tv.regime) + "\"}";
  }
  out += "],\n";
  out += "  \"residuals\": ";
  append_array(out, spec.residuals.data(), 3);
  out += ",\n";
  out += "  \"exact_dimension\": " + std::to_string(spec.exact_dimension) +
         ",\n";
  out += "  \"k_max_scanned\": " + std::to_string(spec.k_max_scanned) + ",\n";
  out += "  \"transversality\": {\"f\": ";
  append_array(out, rep.f_values.data(), 3);
  out += ", \"ftilde\": ";
  append_array(out, rep.ftilde_values.data(), 3);
  out += ", \"bracketed_sum\": " + format_g17(rep.bracketed_sum);
  out += ", \"margin\": " + format_g17(rep.margin);
  out += ", \"nonzero\": " + std::string(bool_str(rep.nonzero));
  out += ", \"all_f_negative\": " + std::string(bool_str(rep.all_f_negative));
  out += ", \"ordering_ok\": " + std::string(bool_str(rep.ordering_ok));
  out += ", \"ftilde3_below_minus_one\": " +
         std::string(bool_str(rep.ftilde3_below_minus_one));
  out += ", \"passed\": " + std::string(bool_str(rep.passed()));
  out += "}\n}\n";
  return out;
}

KernelSpec kernel_spec_from_json(const std::string& text) {
  try {
  const json j = json::parse(text);
  KernelSpec spec;
  for (int i = 0; i < 3; ++i)
    spec.k[static_cast<size_t>(i)] = j.at("k").at(static_cast<size_t>(i)).get<int>();
  spec.a = j.at("a").get<double>();
  spec.params = params_from(j.at("params"));
  for (int i = 0; i < 3; ++i) {
    const json& tj = j.at("thetas").at(static_cast<size_t>(i));
    ThetaValue tv;
    tv.k = tj.at("k").get<int>();
    tv.theta = tj.at("theta").get<double>();
    tv.regime = regime_from(tj.at("regime").get<std::string>());
    spec.thetas[static_cast<size_t>(i)] = tv;
  }
  for (int i = 0; i < 3; ++i)
    spec.residuals[static_cast<size_t>(i)] =
        j.at("residuals").at(static_cast<size_t>(i)).get<double>();
  spec.exact_dimension = j.at("exact_dimension").get<int>();
  spec.k_max_scanned = j.at("k_max_scanned").get<int>();
  return spec;
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("kernel spec: malformed document: ") +
                             e.what());
  }
}

std::string wave_field_to_json(const WaveField& w) {
  const int n_modes = static_cast<int>(w.eta_hat.size());
  const int n_s = static_cast<int>(w.phi.cols()) - 1;
  std::string out = "{\"n_modes\":" + std::to_string(n_modes) +
                    ",\"n_s\":" + std::to_string(n_s) + ",\"eta_hat\":";
  append_array(out, w.eta_hat.data(), static_cast<size_t>(w.eta_hat.size()));
  out += ",\"phi\":[";
  bool first = true;
  for (int r = 0; r < w.phi.rows(); ++r) {
    for (int c = 0; c < w.phi.cols(); ++c) {
      if (!first) out += ',';
      first = false;
      out += format_g17(w.phi(r, c));
    }
  }
  out += "]}";
  return out;
}

WaveField wave_field_from_json(const std::string& text) {
  try {
  const json j = json::parse(text);
  const int n_modes = j.at("n_modes").get<int>();
  const int n_s = j.at("n_s").get<int>();
  const int n_q = 3 * n_modes;
  WaveField w;
  w.eta_hat.resize(n_modes);
  const json& eh = j.at("eta_hat");
  if (static_cast<int>(eh.size()) != n_modes)
    throw std::invalid_argument("wave field: eta_hat length mismatch");
  for (int k = 0; k < n_modes; ++k)
    w.eta_hat(k) = eh.at(static_cast<size_t>(k)).get<double>();
  const json& ph = j.at("phi");
  if (static_cast<int>(ph.size()) != n_q * (n_s + 1))
    throw std::invalid_argument("wave field: phi length mismatch");
  w.phi.resize(n_q, n_s + 1);
  size_t idx = 0;
  for (int r = 0; r < n_q; ++r)
    for (int c = 0; c <= n_s; ++c) w.phi(r, c) = ph.at(idx++).get<double>();
  return w;
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("wave field: malformed document: ") +
                             e.what());
  }
}

std::string wave_field_to_csv(const WaveField& w) {
  const int n_modes = static_cast<int>(w.eta_hat.size());
  const int n_s = static_cast<int>(w.phi.cols()) - 1;
  std::string out = "n_modes,n_s\n";
  out += std::to_string(n_modes) + "," + std::to_string(n_s) + "\n";
  out += "eta_hat\n";
  for (int k = 0; k < n_modes; ++k) out += format_g17(w.eta_hat(k)) + "\n";
  out += "phi\n";
  for (int r = 0; r < w.phi.rows(); ++r)
    for (int c = 0; c < w.phi.cols(); ++c)
      out += format_g17(w.phi(r, c)) + "\n";
  return out;
}

WaveField wave_field_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "n_modes,n_s")
    throw std::invalid_argument("wave field csv: bad header");
  if (!std::getline(in, line))
    throw std::invalid_argument("wave field csv: missing sizes");
  const auto comma = line.find(',');
  if (comma == std::string::npos)
    throw std::invalid_argument("wave field csv: bad size line");
  const int n_modes = std::stoi(line.substr(0, comma));
  const int n_s = std::stoi(line.substr(comma + 1));
  const int n_q = 3 * n_modes;
  WaveField w;
  w.eta_hat.resize(n_modes);
  w.phi.resize(n_q, n_s + 1);
  if (!std::getline(in, line) || line != "eta_hat")
    throw std::invalid_argument("wave field csv: missing eta_hat section");
  for (int k = 0; k < n_modes; ++k) {
    if (!std::getline(in, line))
      throw std::invalid_argument("wave field csv: truncated eta_hat");
    w.eta_hat(k) = std::stod(line);
  }
  if (!std::getline(in, line) || line != "phi")
    throw std::invalid_argument("wave field csv: missing phi section");
  for (int r = 0; r < n_q; ++r)
    for (int c = 0; c <= n_s; ++c) {
      if (!std::getline(in, line))
        throw std::invalid_argument("wave field csv: truncated phi");
      w.phi(r, c) = std::stod(line);
    }
  return w;
}

std::string branch_point_to_json(const BranchPoint& bp) {
  std::string out = "{\n  \"t\": ";
  append_array(out, bp.t.data(), 3);
  out += ",\n  \"params\": " + params_json(bp.params);
  out += ",\n  \"residual_norm\": " + format_g17(bp.residual_norm);
  out += ",\n  \"newton_iters\": " + std::to_string(bp.newton_iters);
  out += ",\n  \"admissible\": " + std::string(bool_str(bp.admissible));
  out += ",\n  \"field\": " + wave_field_to_json(bp.field);
  out += "\n}\n";
  return out;
}

BranchPoint branch_point_from_json(const std::string& text) {
  try {
  const json j = json::parse(text);
  BranchPoint bp;
  for (int i = 0; i < 3; ++i)
    bp.t[static_cast<size_t>(i)] = j.at("t").at(static_cast<size_t>(i)).get<double>();
  bp.params = params_from(j.at("params"));
  bp.residual_norm = j.at("residual_norm").get<double>();
  bp.newton_iters = j.at("newton_iters").get<int>();
  bp.admissible = j.at("admissible").get<bool>();
  bp.field = wave_field_from_json(j.at("field").dump());
  return bp;
  } catch (const json::exception& e) {
    throw std::runtime_error(
        std::string("branch point: malformed document: ") + e.what());
  }
}

std::string profile_to_csv(
    const std::vector<std::pair<double, double>>& rows) {
  std::string out = "q,height\n";
  for (const auto& [q, h] : rows)
    out += format_g17(q) + "," + format_g17(h) + "\n";
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << content;
  if (!f) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace trimodal
