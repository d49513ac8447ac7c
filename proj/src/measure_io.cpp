#include "ballpot/measure_io.hpp"

#include <fstream>
#include <sstream>

#include "ballpot/errors.hpp"
#include "json_fields.hpp"

namespace ballpot {

using namespace detail;

namespace {

std::size_t lineOf(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  std::size_t line = 1;
  for (std::size_t i = 0; i < byte; ++i) line += text[i] == '\n' ? 1 : 0;
  return line;
}

Point pointFromJson(const json& v, const std::string& path, int n) {
  requireArray(v, path);
  if (static_cast<int>(v.size()) != n) {
    fieldError(path, "expected " + std::to_string(n) + " coordinates, got " + std::to_string(v.size()));
  }
  std::vector<Complex> coords;
  for (std::size_t k = 0; k < v.size(); ++k) {
    const std::string cp = indexPath(path, k);
    const auto& pair = requireArray(v[k], cp);
    if (pair.size() != 2) fieldError(cp, "expected [re, im]");
    coords.emplace_back(asNumber(pair[0], indexPath(cp, 0)), asNumber(pair[1], indexPath(cp, 1)));
  }
  try {
    return Point(std::move(coords));
  } catch (const std::exception& e) {
    fieldError(path, e.what());
  }
}

}  // namespace

json parseJsonText(std::string_view text, std::string_view source) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string(source) + ":" + std::to_string(lineOf(text, e.byte == 0 ? 0 : e.byte - 1)) +
                      ": syntax error: " + e.what());
  }
}

std::string readTextFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path.string() + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Measure measureFromJson(const json& doc, const std::string& where) {
  requireObject(doc, where);
  rejectUnknown(doc, where, {"dimension", "atoms", "densities"});
  const std::string dim_path = joinPath(where, "dimension");
  const auto n64 = asUnsigned(requireField(doc, where, "dimension"), dim_path);
  if (n64 < 1 || n64 > 64) fieldError(dim_path, "dimension must lie in [1, 64]");
  const int n = static_cast<int>(n64);

  std::vector<Atom> atoms;
  if (const auto it = doc.find("atoms"); it != doc.end()) {
    const std::string base = joinPath(where, "atoms");
    requireArray(*it, base);
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string ap = indexPath(base, i);
      const auto& a = requireObject((*it)[i], ap);
      rejectUnknown(a, ap, {"coords", "mass"});
      Point location = pointFromJson(requireField(a, ap, "coords"), joinPath(ap, "coords"), n);
      if (!(location.normSquared() < 1.0)) fieldError(joinPath(ap, "coords"), "atoms must lie in the open ball");
      const double mass = asNumber(requireField(a, ap, "mass"), joinPath(ap, "mass"));
      if (!(mass > 0.0)) fieldError(joinPath(ap, "mass"), "mass must be positive");
      atoms.push_back({std::move(location), mass});
    }
  }

  std::vector<RadialDensity> densities;
  if (const auto it = doc.find("densities"); it != doc.end()) {
    const std::string base = joinPath(where, "densities");
    requireArray(*it, base);
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string dp = indexPath(base, i);
      const auto& d = requireObject((*it)[i], dp);
      rejectUnknown(d, dp, {"alpha", "amplitude", "cutoff"});
      RadialDensity rd;
      rd.exponent = asNumber(requireField(d, dp, "alpha"), joinPath(dp, "alpha"));
      if (d.contains("amplitude")) rd.amplitude = asNumber(d["amplitude"], joinPath(dp, "amplitude"));
      if (d.contains("cutoff")) rd.inner_cutoff = asNumber(d["cutoff"], joinPath(dp, "cutoff"));
      if (!(rd.amplitude > 0.0)) fieldError(joinPath(dp, "amplitude"), "amplitude must be positive");
      if (!(rd.inner_cutoff >= 0.0 && rd.inner_cutoff < 1.0)) fieldError(joinPath(dp, "cutoff"), "cutoff must lie in [0, 1)");
      if (!(n + rd.exponent > -1.0)) {
        fieldError(joinPath(dp, "alpha"), "int (1-|w|^2)^n dmu diverges unless n + alpha > -1");
      }
      densities.push_back(rd);
    }
  }
  try {
    return Measure(n, std::move(atoms), std::move(densities));
  } catch (const std::exception& e) {
    fieldError(where.empty() ? "<root>" : where, e.what());
  }
}

Measure parseMeasure(std::string_view text, std::string_view source) {
  const json doc = parseJsonText(text, source);
  try {
    return measureFromJson(doc);
  } catch (const ConfigError& e) {
    throw ConfigError(std::string(source) + ": " + e.what());
  }
}

Measure loadMeasure(const std::filesystem::path& path) { return parseMeasure(readTextFile(path), path.string()); }

json measureToJson(const Measure& mu) {
  json doc = json::object();
  doc["dimension"] = mu.dim();
  json atoms = json::array();
  for (const auto& a : mu.atoms()) {
    json coords = json::array();
    for (const auto& c : a.location.coords()) coords.push_back({c.real(), c.imag()});
    atoms.push_back({{"coords", coords}, {"mass", a.mass}});
  }
  doc["atoms"] = atoms;
  json dens = json::array();
  for (const auto& d : mu.densities()) {
    dens.push_back({{"alpha", d.exponent}, {"amplitude", d.amplitude}, {"cutoff", d.inner_cutoff}});
  }
  doc["densities"] = dens;
  return doc;
}

}  // namespace ballpot
