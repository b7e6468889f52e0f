#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "k3lab/periods.hpp"

namespace k3lab::cli {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

template <class T>
T parse_number(const std::string& key, const std::string& v) {
  T x{};
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || p != v.data() + v.size()) throw UsageError("bad value for " + key + ": '" + v + "'");
  return x;
}

}  // namespace

void Config::validate() const {
  if (order < 6) throw UsageError("order must be at least 6");
  if (!(tol > 0)) throw UsageError("tol must be positive");
  if (bound < 1) throw UsageError("bound must be positive");
}

json Config::to_json() const { return {{"order", order}, {"tol", tol}, {"bound", bound}}; }

void apply_config_text(Config& c, const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw UsageError("config line " + std::to_string(n) + ": expected key=value");
    std::string key = trim(line.substr(0, eq)), v = trim(line.substr(eq + 1));
    if (key == "order")
      c.order = parse_number<int>(key, v);
    else if (key == "tol")
      c.tol = parse_number<double>(key, v);
    else if (key == "bound")
      c.bound = parse_number<int>(key, v);
    else if (key == "cache")
      c.cache = v;
    else
      throw UsageError("config line " + std::to_string(n) + ": unknown key '" + key + "'");
  }
}

Config load_config_file(const std::filesystem::path& p, Config base) {
  std::ifstream in(p);
  if (!in) throw UsageError("cannot read config file " + p.string());
  std::stringstream ss;
  ss << in.rdbuf();
  apply_config_text(base, ss.str());
  return base;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    default: return "inconclusive";
  }
}

void Report::sort() {
  std::stable_sort(claims.begin(), claims.end(), [](const Claim& a, const Claim& b) { return a.id < b.id; });
}

int Report::exit_code() const {
  for (const auto& c : claims)
    if (c.verdict == Verdict::Fail) return 1;
  return 0;
}

json Report::to_json() const {
  json cl = json::array();
  int counts[3] = {0, 0, 0};
  for (const auto& c : claims) {
    json j = {{"id", c.id}, {"ref", c.ref}, {"computed", c.computed}, {"expected", c.expected},
              {"verdict", cli::to_string(c.verdict)}};
    if (!c.note.empty()) j["note"] = c.note;
    if (config.timings) j["runtime"] = c.runtime;
    cl.push_back(std::move(j));
    ++counts[int(c.verdict)];
  }
  json r = {{"schema", "k3lab-report/1"},
            {"command", command},
            {"config", config.to_json()},
            {"claims", std::move(cl)},
            {"summary", {{"pass", counts[0]}, {"fail", counts[1]}, {"inconclusive", counts[2]}}}};
  if (!data.empty()) r["data"] = data;
  return r;
}

std::string Report::to_text() const {
  std::ostringstream o;
  o << "k3lab-report/1  " << command << "\n";
  int counts[3] = {0, 0, 0};
  std::size_t w = 0;
  for (const auto& c : claims) w = std::max(w, c.id.size());
  for (const auto& c : claims) {
    static const char* tag[3] = {"PASS", "FAIL", "INCO"};
    o << tag[int(c.verdict)] << "  " << c.id << std::string(w - c.id.size() + 2, ' ') << c.computed;
    if (c.verdict != Verdict::Pass) o << "  (expected " << c.expected << ")";
    if (!c.note.empty()) o << "  [" << c.note << "]";
    o << "\n";
    ++counts[int(c.verdict)];
  }
  o << counts[0] << " pass, " << counts[1] << " fail, " << counts[2] << " inconclusive\n";
  return o.str();
}

std::string rational_string(const Rational& q) { return q.get_num().get_str() + "/" + q.get_den().get_str(); }

Rational rational_from_string(const std::string& s) { return parse_rational(s); }

std::complex<double> parse_complex(const std::string& s) {
  std::string t;
  for (char ch : s)
    if (ch != ' ') t += ch;
  auto real = [&](std::string v, bool unit) {
    if (unit && (v.empty() || v == "+" || v == "-")) return v == "-" ? -1.0 : 1.0;
    if (!v.empty() && v[0] == '+') v.erase(0, 1);
    if (v.empty() || v[0] == '+') throw UsageError("bad complex number '" + s + "'");
    return parse_number<double>("complex number", v);
  };
  if (t.empty() || t.back() != 'i') return {real(t, false), 0.0};
  t.pop_back();
  std::size_t cut = std::string::npos;
  for (std::size_t k = t.size(); k-- > 1;)
    if ((t[k] == '+' || t[k] == '-') && t[k - 1] != 'e' && t[k - 1] != 'E') {
      cut = k;
      break;
    }
  if (cut == std::string::npos) return {0.0, real(t, true)};
  return {real(t.substr(0, cut), false), real(t.substr(cut), true)};
}

std::string checksum(const std::string& body) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : body) h = (h ^ ch) * 1099511628211ull;
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::optional<std::string> Cache::read(const std::string& name) const {
  std::ifstream in(path(name), std::ios::binary);
  if (!in) return std::nullopt;
  std::string head;
  if (!std::getline(in, head)) return std::nullopt;
  std::stringstream ss;
  ss << in.rdbuf();
  std::string body = ss.str();
  if (head != "k3lab-cache/1 fnv1a64=" + checksum(body)) return std::nullopt;
  return body;
}

void Cache::write(const std::string& name, const std::string& body) const {
  std::filesystem::create_directories(dir_);
  std::filesystem::path tmp = path(name + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << "k3lab-cache/1 fnv1a64=" << checksum(body) << "\n" << body;
  }
  std::filesystem::rename(tmp, path(name));
}

std::string series_to_lines(int j, const BiSeries& s) {
  std::string out;
  for (int d = 0; d <= s.order(); ++d)
    for (int m = 0; m <= d; ++m) {
      const Rational& q = s(d - m, m);
      json line = {{"family", j}, {"n", d - m}, {"m", m}, {"numerator", q.get_num().get_str()},
                   {"denominator", q.get_den().get_str()}};
      out += line.dump() + "\n";
    }
  return out;
}

std::optional<BiSeries> series_from_lines(int j, int order, const std::string& text) {
  BiSeries s(order);
  std::istringstream in(text);
  std::string line;
  std::size_t seen = 0;
  try {
    while (std::getline(in, line)) {
      json l = json::parse(line);
      int n = l.at("n"), m = l.at("m");
      if (l.at("family") != j || n < 0 || m < 0 || n + m > order) return std::nullopt;
      Integer den(l.at("denominator").get<std::string>());
      if (den == 0) return std::nullopt;
      Rational q(Integer(l.at("numerator").get<std::string>()), den);
      q.canonicalize();
      s.at(n, m) = q;
      ++seen;
    }
  } catch (const std::exception&) {
    return std::nullopt;
  }
  if (seen != std::size_t(order + 1) * std::size_t(order + 2) / 2) return std::nullopt;
  s.set_valid_order(order);
  return s;
}

BiSeries cached_series(int j, int order, const Cache* cache) {
  std::string name = "series-f" + std::to_string(j) + "-o" + std::to_string(order) + ".jsonl";
  if (cache)
    if (auto body = cache->read(name))
      if (auto s = series_from_lines(j, order, *body)) return *s;
  BiSeries s = period_series(j, order);
  if (cache) cache->write(name, series_to_lines(j, s));
  return s;
}

}  // namespace k3lab::cli
