#include "ballpot/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "ballpot/errors.hpp"
#include "ballpot/measure_io.hpp"
#include "json_fields.hpp"

namespace ballpot {

using namespace detail;

namespace {

json number(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

double numberOrNan(const json& v, const std::string& path) {
  if (v.is_null()) return std::numeric_limits<double>::quiet_NaN();
  return asNumber(v, path);
}

CheckStatus statusFrom(const std::string& s, const std::string& path) {
  if (s == "pass") return CheckStatus::pass;
  if (s == "fail") return CheckStatus::fail;
  if (s == "skip") return CheckStatus::skip;
  fieldError(path, "unknown status '" + s + "'");
}

std::string g17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::vector<const ResultRecord*> byName(std::span<const ResultRecord> records) {
  std::vector<const ResultRecord*> v;
  for (const auto& r : records) v.push_back(&r);
  std::stable_sort(v.begin(), v.end(), [](auto* a, auto* b) { return a->scenario < b->scenario; });
  return v;
}

}  // namespace

json recordToJson(const ResultRecord& rec) {
  json j = json::object();
  j["scenario"] = rec.scenario;
  j["passed"] = rec.passed();
  j["config"] = rec.config;
  json checks = json::array();
  for (const auto& c : rec.checks) {
    json cj = {{"name", c.name}, {"status", std::string(statusName(c.status))}, {"detail", c.detail}};
    json metrics = json::object();
    for (const auto& [k, v] : c.metrics) metrics[k] = number(v);
    cj["metrics"] = metrics;
    json fits = json::array();
    for (const auto& f : c.fits) {
      fits.push_back({{"quantity", f.quantity}, {"slope", number(f.slope)}, {"intercept", number(f.intercept)},
                      {"residual_rms", number(f.residual_rms)}});
    }
    cj["fits"] = fits;
    checks.push_back(cj);
  }
  j["checks"] = checks;
  json rows = json::array();
  for (const auto& r : rec.rows) {
    rows.push_back({{"check", r.check}, {"quantity", r.quantity}, {"abscissa", number(r.abscissa)},
                    {"value", number(r.value)}, {"std_error", number(r.std_error)}, {"samples", r.samples}});
  }
  j["tables"] = rows;
  j["wall_clock_seconds"] = rec.wall_clock_seconds;
  return j;
}

ResultRecord recordFromJson(const json& doc) {
  requireObject(doc, "");
  rejectUnknown(doc, "", {"scenario", "passed", "config", "checks", "tables", "wall_clock_seconds"});
  ResultRecord rec;
  rec.scenario = asString(requireField(doc, "", "scenario"), "scenario");
  rec.config = requireField(doc, "", "config");
  const auto& checks = requireArray(requireField(doc, "", "checks"), "checks");
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const std::string cp = indexPath("checks", i);
    const auto& cj = requireObject(checks[i], cp);
    rejectUnknown(cj, cp, {"name", "status", "detail", "metrics", "fits"});
    CheckResult c;
    c.name = asString(requireField(cj, cp, "name"), joinPath(cp, "name"));
    c.status = statusFrom(asString(requireField(cj, cp, "status"), joinPath(cp, "status")), joinPath(cp, "status"));
    c.detail = asString(requireField(cj, cp, "detail"), joinPath(cp, "detail"));
    if (cj.contains("metrics")) {
      for (const auto& [k, v] : requireObject(cj["metrics"], joinPath(cp, "metrics")).items()) {
        c.metrics[k] = numberOrNan(v, joinPath(cp, "metrics." + k));
      }
    }
    if (cj.contains("fits")) {
      const auto& fits = requireArray(cj["fits"], joinPath(cp, "fits"));
      for (std::size_t k = 0; k < fits.size(); ++k) {
        const std::string fp = indexPath(joinPath(cp, "fits"), k);
        const auto& f = requireObject(fits[k], fp);
        rejectUnknown(f, fp, {"quantity", "slope", "intercept", "residual_rms"});
        c.fits.push_back({asString(requireField(f, fp, "quantity"), joinPath(fp, "quantity")),
                          numberOrNan(requireField(f, fp, "slope"), joinPath(fp, "slope")),
                          numberOrNan(requireField(f, fp, "intercept"), joinPath(fp, "intercept")),
                          numberOrNan(requireField(f, fp, "residual_rms"), joinPath(fp, "residual_rms"))});
      }
    }
    rec.checks.push_back(std::move(c));
  }
  const auto& rows = requireArray(requireField(doc, "", "tables"), "tables");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::string rp = indexPath("tables", i);
    const auto& r = requireObject(rows[i], rp);
    rejectUnknown(r, rp, {"check", "quantity", "abscissa", "value", "std_error", "samples"});
    rec.rows.push_back({asString(requireField(r, rp, "check"), joinPath(rp, "check")),
                        asString(requireField(r, rp, "quantity"), joinPath(rp, "quantity")),
                        numberOrNan(requireField(r, rp, "abscissa"), joinPath(rp, "abscissa")),
                        numberOrNan(requireField(r, rp, "value"), joinPath(rp, "value")),
                        numberOrNan(requireField(r, rp, "std_error"), joinPath(rp, "std_error")),
                        asUnsigned(requireField(r, rp, "samples"), joinPath(rp, "samples"))});
  }
  if (doc.contains("wall_clock_seconds")) rec.wall_clock_seconds = asNumber(doc["wall_clock_seconds"], "wall_clock_seconds");
  return rec;
}

ResultRecord loadRecord(const std::filesystem::path& path) {
  const std::string text = readTextFile(path);
  const json doc = parseJsonText(text, path.string());
  try {
    return recordFromJson(doc);
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

std::string csvHeader() { return "scenario,check,quantity,abscissa,value,std_error,samples\n"; }

std::string recordsToCsv(std::span<const ResultRecord> records) {
  std::string out = csvHeader();
  for (const auto* rec : byName(records)) {
    for (const auto& r : rec->rows) {
      out += rec->scenario + "," + r.check + "," + r.quantity + "," + g17(r.abscissa) + "," + g17(r.value) + "," +
             g17(r.std_error) + "," + std::to_string(r.samples) + "\n";
    }
  }
  return out;
}

std::string summaryText(std::span<const ResultRecord> records) {
  std::ostringstream out;
  for (const auto* rec : byName(records)) {
    std::size_t counts[3] = {0, 0, 0};
    for (const auto& c : rec->checks) ++counts[static_cast<int>(c.status)];
    out << "scenario " << rec->scenario << ": " << (rec->passed() ? "PASS" : "FAIL") << " (" << counts[0]
        << " pass, " << counts[1] << " fail, " << counts[2] << " skip)\n";
    for (const auto& c : rec->checks) {
      out << "  " << statusName(c.status) << "  " << c.name << ": " << c.detail << "\n";
    }
  }
  return out.str();
}

void writeFileAtomic(const std::filesystem::path& path, const std::string& content) {
  const auto tmp = std::filesystem::path(path).concat(".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

WrittenFiles writeRecord(const ResultRecord& rec, const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  WrittenFiles files{out_dir / (rec.scenario + ".record.json"), out_dir / (rec.scenario + ".csv")};
  writeFileAtomic(files.record, recordToJson(rec).dump(2) + "\n");
  writeFileAtomic(files.csv, recordsToCsv(std::span<const ResultRecord>(&rec, 1)));
  return files;
}

}  // namespace ballpot
