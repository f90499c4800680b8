#include "sorkinlab/io.hpp"

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <vector>

namespace sorkinlab {

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void dump_matrix(std::ostream& os, const Eigen::MatrixXd& m, const std::string& kind) {
  if (m.rows() != m.cols()) throw std::invalid_argument("dump_matrix expects a square matrix");
  os << "matrix n=" << m.rows() << " kind=" << kind << "\n";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) os << " ";
      os << format_g17(m(i, j));
    }
    os << "\n";
  }
}

void dump_matrix(std::ostream& os, const Eigen::MatrixXcd& m, const std::string& kind) {
  if (m.rows() != m.cols()) throw std::invalid_argument("dump_matrix expects a square matrix");
  os << "matrix n=" << m.rows() << " kind=" << kind << "\n";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) os << " ";
      os << format_g17(m(i, j).real()) << " " << format_g17(m(i, j).imag());
    }
    os << "\n";
  }
}

Eigen::MatrixXcd load_matrix(std::istream& is, std::string* kind_out) {
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("empty matrix file");
  int n = 0;
  char kind[32] = {0};
  if (std::sscanf(line.c_str(), "matrix n=%d kind=%31s", &n, kind) != 2) {
    throw std::runtime_error("bad matrix header: " + line);
  }
  if (kind_out) *kind_out = kind;
  const bool complex_kind = std::string(kind) == "w";
  Eigen::MatrixXcd m(n, n);
  for (int i = 0; i < n; ++i) {
    if (!std::getline(is, line)) throw std::runtime_error("truncated matrix file");
    std::istringstream ls(line);
    for (int j = 0; j < n; ++j) {
      double re = 0.0, im = 0.0;
      if (!(ls >> re)) throw std::runtime_error("truncated matrix row");
      if (complex_kind && !(ls >> im)) throw std::runtime_error("truncated complex matrix row");
      m(i, j) = std::complex<double>(re, im);
    }
  }
  return m;
}

KeyValueConfig KeyValueConfig::parse_stream(std::istream& is) {
  KeyValueConfig cfg;
  std::string line;
  while (std::getline(is, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      const auto b = s.find_last_not_of(" \t\r");
      return (a == std::string::npos) ? std::string() : s.substr(a, b - a + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    if (!key.empty()) cfg.entries_[key] = trim(line.substr(eq + 1));
  }
  return cfg;
}

KeyValueConfig KeyValueConfig::parse_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open config file: " + path);
  return parse_stream(f);
}

void KeyValueConfig::set(const std::string& key, const std::string& value) {
  entries_[key] = value;
}

bool KeyValueConfig::has(const std::string& key) const { return entries_.count(key) > 0; }

std::string KeyValueConfig::get(const std::string& key, const std::string& fallback) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? fallback : it->second;
}

std::string KeyValueConfig::require(const std::string& key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) throw std::runtime_error("missing config key: " + key);
  return it->second;
}

double KeyValueConfig::get_double(const std::string& key, double fallback) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? fallback : std::stod(it->second);
}

long KeyValueConfig::get_long(const std::string& key, long fallback) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? fallback : std::stol(it->second);
}

void KeyValueConfig::write(std::ostream& os) const {
  for (const auto& [k, v] : entries_) os << k << "=" << v << "\n";
}

int thread_cap() {
  if (const char* env = std::getenv("SORKINLAB_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

void parallel_for(int n, const std::function<void(int)>& body) {
  const int workers = std::min(thread_cap(), n);
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace sorkinlab
