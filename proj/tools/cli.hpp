#pragma once
// Command-line front end: configuration, claims and reports, caching.
#include <complex>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "k3lab/biseries.hpp"
#include "k3lab/monodromy.hpp"

namespace k3lab::cli {

using nlohmann::json;

// Bad flags, values or config keys. Exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  int order = 14;
  double tol = 1e-10;
  std::string cache;  // empty: no caching
  int bound = 3;
  bool timings = false;

  void validate() const;
  json to_json() const;
};

// key=value lines, '#' comments. Keys: order, tol, cache, bound.
void apply_config_text(Config& c, const std::string& text);
Config load_config_file(const std::filesystem::path& p, Config base = {});

enum class Verdict { Pass, Fail, Inconclusive };
std::string to_string(Verdict v);

struct Claim {
  std::string id, ref, computed, expected;
  Verdict verdict = Verdict::Fail;
  std::string note;
  double runtime = 0;  // seconds
};

struct Report {
  std::string command;
  Config config;
  std::vector<Claim> claims;
  json data = json::object();

  void sort();
  int exit_code() const;  // 0 all pass or inconclusive, 1 any fail
  json to_json() const;
  std::string to_text() const;
};

// "num/den" always, also for integers.
std::string rational_string(const Rational& q);
Rational rational_from_string(const std::string& s);
// "1.5", "-2e-3i", "0.1+0.05i"
std::complex<double> parse_complex(const std::string& s);

// Files carry a first line with the FNV-1a checksum of the body. A file whose
// checksum does not match is treated as missing.
class Cache {
 public:
  explicit Cache(std::filesystem::path dir) : dir_(std::move(dir)) {}
  std::optional<std::string> read(const std::string& name) const;
  void write(const std::string& name, const std::string& body) const;
  std::filesystem::path path(const std::string& name) const { return dir_ / name; }

 private:
  std::filesystem::path dir_;
};

std::string checksum(const std::string& body);

// Series as JSON lines {family, n, m, numerator, denominator}.
std::string series_to_lines(int j, const BiSeries& s);
std::optional<BiSeries> series_from_lines(int j, int order, const std::string& text);
BiSeries cached_series(int j, int order, const Cache* cache);

// ---- suites, claims sorted by id
std::vector<Claim> suite_polytopes(const Config& c);
std::vector<Claim> suite_lattices(const Config& c);
std::vector<Claim> suite_fibres(const Config& c);
std::vector<Claim> suite_gkz(const Config& c, std::optional<int> family, const Cache* cache);
std::vector<Claim> suite_pfaffian(const Config& c, std::optional<int> family);
std::vector<Claim> suite_monodromy(const Config& c, const Cache* cache);
std::vector<Claim> suite_hilbert(const Config& c);

Report fibres_report(const Config& c, int family, const Rational& lambda, const Rational& mu, bool alternate);

struct LoopSpec {
  int family = 0;
  std::string kind;  // lambda-circle, mu-circle, disc-circle
  std::complex<double> lambda, mu;
  double radius = 0;
  double tol = 1e-10;
};
Loop make_loop(const LoopSpec& s);
TransportResult cached_transport(const PfaffianSystem& p, const LoopSpec& s, double tol, const Cache* cache);
Report monodromy_report(const Config& c, const LoopSpec& s, const Cache* cache);

// All suites in parallel; claims merged and sorted.
Report full_report(const Config& c, const Cache* cache);

// Parses argv, writes the report to out and diagnostics to err.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace k3lab::cli
