#pragma once

#include <Eigen/Dense>
#include <functional>
#include <iosfwd>
#include <map>
#include <string>

namespace sorkinlab {

// Matrix dump: header "matrix n=<N> kind=<gret|delta|w>", then row-major
// entries at %.17g. Real kinds carry one float per entry, the complex kind
// (w) carries re and im adjacently.
void dump_matrix(std::ostream& os, const Eigen::MatrixXd& m, const std::string& kind);
void dump_matrix(std::ostream& os, const Eigen::MatrixXcd& m, const std::string& kind);
Eigen::MatrixXcd load_matrix(std::istream& is, std::string* kind_out = nullptr);

std::string format_g17(double v);

// Flat key=value configuration ('#' starts a comment). Writing emits keys in
// sorted order so resolved configs diff cleanly.
class KeyValueConfig {
 public:
  static KeyValueConfig parse_stream(std::istream& is);
  static KeyValueConfig parse_file(const std::string& path);

  void set(const std::string& key, const std::string& value);
  bool has(const std::string& key) const;
  std::string get(const std::string& key, const std::string& fallback) const;
  std::string require(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  long get_long(const std::string& key, long fallback) const;
  void write(std::ostream& os) const;
  const std::map<std::string, std::string>& entries() const { return entries_; }

 private:
  std::map<std::string, std::string> entries_;
};

// Internal parallelism cap: SORKINLAB_THREADS, else hardware concurrency.
int thread_cap();

// index-parallel loop; bodies write results by index so output stays
// deterministic regardless of the thread count
void parallel_for(int n, const std::function<void(int)>& body);

}  // namespace sorkinlab
