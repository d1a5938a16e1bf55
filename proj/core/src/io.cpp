#include "wchaos/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace wchaos {

namespace {

using nlohmann::json;

[[noreturn]] void schema_error(const std::string& what) {
  throw std::runtime_error("schema error: " + what);
}

std::string emit_pair(Complex value) {
  return "[" + format_double(value.real()) + "," + format_double(value.imag()) + "]";
}

// Row-major nested arrays, depth = degree, innermost elements [re, im].
std::string emit_block(const CoeffTensor& f, int depth, std::size_t offset) {
  if (depth == f.degree) return emit_pair(f.c[offset]);
  const std::size_t stride = tensor_size(f.grid, f.degree - depth - 1);
  std::string out = "[";
  for (int j = 0; j < f.grid.cells; ++j) {
    if (j > 0) out += ",";
    out += emit_block(f, depth + 1, offset + static_cast<std::size_t>(j) * stride);
  }
  return out + "]";
}

GridSpec grid_from_json(const json& node) {
  if (!node.is_object() || !node.contains("horizon") || !node.contains("cells")) {
    schema_error("grid must be an object with horizon and cells");
  }
  if (!node["horizon"].is_number()) schema_error("horizon must be a number");
  if (!node["cells"].is_number_integer()) schema_error("cells must be an integer");
  GridSpec grid{node["horizon"].get<double>(), node["cells"].get<int>()};
  if (!(grid.horizon > 0.0) || grid.cells < 1) {
    schema_error("grid needs horizon > 0 and cells >= 1");
  }
  return grid;
}

Complex pair_from_json(const json& node) {
  if (!node.is_array() || node.size() != 2 || !node[0].is_number() ||
      !node[1].is_number()) {
    schema_error("complex values must be [re, im] number pairs");
  }
  return Complex(node[0].get<double>(), node[1].get<double>());
}

void read_block(const json& node, CoeffTensor& out, int depth, std::size_t offset) {
  if (depth == out.degree) {
    out.c[offset] = pair_from_json(node);
    return;
  }
  if (!node.is_array() || node.size() != static_cast<std::size_t>(out.grid.cells)) {
    schema_error("degree " + std::to_string(out.degree) +
                 " array axes must all have length cells");
  }
  const std::size_t stride = tensor_size(out.grid, out.degree - depth - 1);
  for (int j = 0; j < out.grid.cells; ++j) {
    read_block(node[static_cast<std::size_t>(j)], out, depth + 1,
               offset + static_cast<std::size_t>(j) * stride);
  }
}

ChaosElement element_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("grid") || !doc.contains("degrees")) {
    schema_error("document must be an object with grid and degrees");
  }
  const GridSpec grid = grid_from_json(doc["grid"]);
  const json& degrees = doc["degrees"];
  if (!degrees.is_object()) schema_error("degrees must be an object");

  ChaosElement Y = chaos_zero(grid);
  for (auto it = degrees.begin(); it != degrees.end(); ++it) {
    int degree = 0;
    try {
      degree = std::stoi(it.key());
    } catch (const std::exception&) {
      schema_error("degree keys must be decimal integers");
    }
    if (degree < 0 || it.key() != std::to_string(degree)) {
      schema_error("degree keys must be canonical non-negative decimals");
    }
    if (degree > 16) schema_error("degree " + it.key() + " exceeds the supported range");
    CoeffTensor t = zero_tensor(grid, degree);
    read_block(it.value(), t, 0, 0);
    Y = Y + chaos_from_tensor(t);
  }
  return Y;
}

json parse_or_throw(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("parse error: ") + e.what());
  }
}

void emit_kv(std::string& out, const char* key, const std::string& value) {
  out += "\"";
  out += key;
  out += "\": ";
  out += value;
}

std::string emit_complex_field(Complex value) {
  return "[" + format_double(value.real()) + ", " + format_double(value.imag()) + "]";
}

}  // namespace

std::string format_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

std::string emit_chaos_json(const ChaosElement& Y) {
  std::string out = "{\"grid\":{\"horizon\":" + format_double(Y.grid.horizon) +
                    ",\"cells\":" + std::to_string(Y.grid.cells) + "},\"degrees\":{";
  bool first = true;
  for (const auto& [n, f] : Y.degrees) {
    if (!first) out += ",";
    first = false;
    out += "\"" + std::to_string(n) + "\":" + emit_block(f, 0, 0);
  }
  out += "}}\n";
  return out;
}

ChaosElement parse_chaos_json(const std::string& text) {
  return element_from_json(parse_or_throw(text));
}

std::vector<ReductionStep> parse_reduction_steps(const std::string& text,
                                                 const GridSpec& grid) {
  const json doc = parse_or_throw(text);
  if (!doc.is_object() || !doc.contains("steps") || !doc["steps"].is_array()) {
    schema_error("steps document must be an object with a steps array");
  }
  std::vector<ReductionStep> steps;
  for (const json& entry : doc["steps"]) {
    if (!entry.is_object() || !entry.contains("p") || !entry.contains("h")) {
      schema_error("every step needs p (chaos document) and h (direction)");
    }
    ReductionStep step{element_from_json(entry["p"]), zero_tensor(grid, 1)};
    if (!(step.p.grid == grid)) schema_error("step p lives on a different grid");
    const json& h = entry["h"];
    if (!h.is_array() || h.size() != static_cast<std::size_t>(grid.cells)) {
      schema_error("step h must list one [re, im] pair per cell");
    }
    for (int j = 0; j < grid.cells; ++j) {
      step.h.c[static_cast<std::size_t>(j)] =
          pair_from_json(h[static_cast<std::size_t>(j)]);
    }
    steps.push_back(std::move(step));
  }
  return steps;
}

std::string emit_verify_json(const CheckParams& params,
                             const std::vector<CheckResult>& results) {
  bool all_pass = true;
  for (const CheckResult& r : results) all_pass = all_pass && r.pass;

  std::string out = "{\n  ";
  emit_kv(out, "grid",
          "{\"horizon\": " + format_double(params.grid.horizon) +
              ", \"cells\": " + std::to_string(params.grid.cells) + "}");
  out += ",\n  ";
  emit_kv(out, "degree", std::to_string(params.degree));
  out += ",\n  ";
  emit_kv(out, "seed", std::to_string(params.seed));
  out += ",\n  ";
  emit_kv(out, "trials", std::to_string(params.trials));
  out += ",\n  ";
  emit_kv(out, "all_pass", all_pass ? "true" : "false");
  out += ",\n  \"checks\": [\n";
  for (std::size_t i = 0; i < results.size(); ++i) {
    const CheckResult& r = results[i];
    out += "    {\"name\": \"" + r.name + "\", \"status\": \"" +
           (r.pass ? "pass" : "fail") + "\", \"residual\": " +
           format_double(r.residual) + ", \"tolerance\": " +
           format_double(r.tolerance) + "}";
    if (i + 1 < results.size()) out += ",";
    out += "\n";
  }
  out += "  ]\n}\n";
  return out;
}

std::string emit_reduction_report_json(const ReductionReport& report) {
  std::string degrees = "[";
  for (std::size_t i = 0; i < report.intermediate_top_degrees.size(); ++i) {
    if (i > 0) degrees += ", ";
    degrees += std::to_string(report.intermediate_top_degrees[i]);
  }
  degrees += "]";

  std::string out = "{\n  ";
  emit_kv(out, "intermediate_top_degrees", degrees);
  out += ",\n  ";
  emit_kv(out, "final_scalar", emit_complex_field(report.final_scalar));
  out += ",\n  ";
  emit_kv(out, "predicted_scalar", emit_complex_field(report.predicted_scalar));
  out += ",\n  ";
  emit_kv(out, "abs_difference", format_double(report.abs_difference));
  out += ",\n  ";
  emit_kv(out, "agrees", report.agrees ? "true" : "false");
  out += "\n}\n";
  return out;
}

std::string emit_probe_report_json(const ZeroDivisorReport& report) {
  std::string out = "{\n  ";
  emit_kv(out, "norm_Yu", format_double(report.norm_Yu));
  out += ",\n  ";
  emit_kv(out, "norm_Ystar_u", format_double(report.norm_Ystar_u));
  out += "\n}\n";
  return out;
}

std::string emit_moments_csv(const std::vector<Complex>& values) {
  std::string out = "k,real,imag\n";
  for (std::size_t k = 0; k < values.size(); ++k) {
    out += std::to_string(k) + "," + format_double(values[k].real()) + "," +
           format_double(values[k].imag()) + "\n";
  }
  return out;
}

std::string emit_spectrum_csv(const SpectralMeasure& mu, int bins) {
  if (bins < 1) throw std::invalid_argument("emit_spectrum_csv: need at least one bin");
  if (mu.points.empty()) {
    throw std::invalid_argument("emit_spectrum_csv: empty measure");
  }
  double lo = mu.points.front().eigenvalue;
  double hi = mu.points.back().eigenvalue;
  if (!(hi > lo)) {
    lo -= 0.5;
    hi += 0.5;
  }
  const double width = (hi - lo) / bins;

  std::vector<double> weight(static_cast<std::size_t>(bins), 0.0);
  for (const SpectralPoint& pt : mu.points) {
    int index = static_cast<int>((pt.eigenvalue - lo) / width);
    if (index < 0) index = 0;
    if (index >= bins) index = bins - 1;
    weight[static_cast<std::size_t>(index)] += pt.weight;
  }

  std::string out = "bin_left,bin_right,weight\n";
  for (int i = 0; i < bins; ++i) {
    out += format_double(lo + i * width) + "," + format_double(lo + (i + 1) * width) +
           "," + format_double(weight[static_cast<std::size_t>(i)]) + "\n";
  }
  return out;
}

std::string emit_points_csv(const SpectralMeasure& mu) {
  std::string out = "eigenvalue,weight\n";
  for (const SpectralPoint& pt : mu.points) {
    out += format_double(pt.eigenvalue) + "," + format_double(pt.weight) + "\n";
  }
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content;
  if (!out) throw std::runtime_error("cannot write file: " + path);
}

}  // namespace wchaos
