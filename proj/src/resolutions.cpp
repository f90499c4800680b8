#include "sorkinlab/resolutions.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace sorkinlab {

namespace {

std::vector<Interval> svc_set(int depth) {
  // Fat Cantor construction on [0,1): step k removes the open middle piece of
  // length 4^-k from each of the 2^(k-1) surviving intervals. All endpoints
  // are dyadic, so doubles represent them exactly.
  std::vector<Interval> keep{Interval{0.0, 1.0}};
  for (int k = 1; k <= depth; ++k) {
    const double gap = std::ldexp(1.0, -2 * k);  // 4^-k
    std::vector<Interval> next;
    next.reserve(keep.size() * 2);
    for (const Interval& p : keep) {
      const double mid = 0.5 * (p.lo + p.hi);
      next.push_back(Interval{p.lo, mid - gap / 2});
      next.push_back(Interval{mid + gap / 2, p.hi});
    }
    keep = std::move(next);
  }
  return keep;
}

double parse_number(const std::string& tok) {
  if (tok == "inf" || tok == "+inf") return kInf;
  if (tok == "-inf") return -kInf;
  std::size_t pos = 0;
  double v = std::stod(tok, &pos);
  if (pos != tok.size()) throw std::invalid_argument("bad number in resolution literal: " + tok);
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

Resolution Resolution::uniform(double width, double offset) {
  if (!(width > 0.0) || !std::isfinite(width)) {
    throw std::invalid_argument("uniform resolution needs width > 0");
  }
  Resolution r;
  r.kind_ = Kind::uniform;
  r.width_ = width;
  r.offset_ = offset;
  return r;
}

Resolution Resolution::threshold(std::vector<double> cuts) {
  if (cuts.empty()) throw std::invalid_argument("threshold resolution needs at least one cut");
  std::sort(cuts.begin(), cuts.end());
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (!(cuts[i] < cuts[i + 1])) throw std::invalid_argument("threshold cuts must be distinct");
  }
  Resolution r;
  r.kind_ = Kind::threshold;
  r.cuts_ = cuts;
  double prev = -kInf;
  for (std::size_t i = 0; i <= cuts.size(); ++i) {
    double next = (i < cuts.size()) ? cuts[i] : kInf;
    r.bins_.push_back(IntervalSet{Interval{prev, next}});
    prev = next;
  }
  r.validate_list();
  return r;
}

Resolution Resolution::svc(int depth) {
  if (depth < 1 || depth > 20) throw std::invalid_argument("svc depth must be in [1,20]");
  Resolution r;
  r.kind_ = Kind::svc;
  r.depth_ = depth;
  IntervalSet fat(svc_set(depth));
  IntervalSet unit{Interval{0.0, 1.0}};
  // gaps = [0,1) minus the fat Cantor set
  std::vector<Interval> gaps;
  double prev = 0.0;
  for (const Interval& p : fat.parts()) {
    gaps.push_back(Interval{prev, p.lo});
    prev = p.hi;
  }
  gaps.push_back(Interval{prev, 1.0});
  r.bins_.push_back(IntervalSet{Interval{-kInf, 0.0}});
  r.bins_.push_back(fat);
  r.bins_.push_back(IntervalSet(std::move(gaps)));
  r.bins_.push_back(IntervalSet{Interval{1.0, kInf}});
  r.validate_list();
  return r;
}

Resolution Resolution::explicit_list(std::vector<IntervalSet> bins) {
  Resolution r;
  r.kind_ = Kind::explicit_bins;
  r.bins_ = std::move(bins);
  r.validate_list();
  return r;
}

void Resolution::validate_list() const {
  if (bins_.size() < 2) throw std::invalid_argument("resolution needs at least two bins");
  IntervalSet cover;
  for (const IntervalSet& b : bins_) {
    if (b.measure() <= 0.0) throw std::invalid_argument("resolution bin of zero measure");
    for (const IntervalSet& o : bins_) {
      if (&o == &b) continue;
      if (!intersect(b, o).empty()) throw std::invalid_argument("resolution bins overlap");
    }
    cover = unite(cover, b);
  }
  if (!(cover == IntervalSet::whole())) {
    throw std::invalid_argument("resolution bins must cover the real line");
  }
}

Resolution Resolution::parse(const std::string& literal) {
  auto colon = literal.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("bad resolution literal: " + literal);
  const std::string head = literal.substr(0, colon);
  const std::string rest = literal.substr(colon + 1);
  if (head == "uniform") {
    double w = 1.0, o = 0.0;
    for (const std::string& kv : split(rest, ',')) {
      auto eq = kv.find('=');
      if (eq == std::string::npos) throw std::invalid_argument("bad uniform literal: " + literal);
      const std::string key = kv.substr(0, eq);
      const double val = parse_number(kv.substr(eq + 1));
      if (key == "w") {
        w = val;
      } else if (key == "o") {
        o = val;
      } else {
        throw std::invalid_argument("unknown uniform key: " + key);
      }
    }
    return uniform(w, o);
  }
  if (head == "threshold") {
    std::vector<double> cuts;
    for (const std::string& tok : split(rest, ',')) cuts.push_back(parse_number(tok));
    return threshold(std::move(cuts));
  }
  if (head == "svc") {
    auto eq = rest.find('=');
    if (eq == std::string::npos || rest.substr(0, eq) != "d") {
      throw std::invalid_argument("bad svc literal: " + literal);
    }
    return svc(static_cast<int>(parse_number(rest.substr(eq + 1))));
  }
  if (head == "explicit") {
    std::vector<IntervalSet> bins;
    for (const std::string& bin_tok : split(rest, ';')) {
      std::vector<Interval> parts;
      for (const std::string& tok : split(bin_tok, '|')) {
        if (tok.size() < 4 || tok.front() != '[' || tok.back() != ')') {
          throw std::invalid_argument("bad interval token: " + tok);
        }
        auto comma = tok.find(',');
        if (comma == std::string::npos) throw std::invalid_argument("bad interval token: " + tok);
        parts.push_back(Interval{parse_number(tok.substr(1, comma - 1)),
                                 parse_number(tok.substr(comma + 1, tok.size() - comma - 2))});
      }
      bins.push_back(IntervalSet(std::move(parts)));
    }
    return explicit_list(std::move(bins));
  }
  throw std::invalid_argument("unknown resolution kind: " + head);
}

std::string Resolution::literal() const {
  char buf[128];
  switch (kind_) {
    case Kind::uniform:
      std::snprintf(buf, sizeof(buf), "uniform:w=%.17g,o=%.17g", width_, offset_);
      return buf;
    case Kind::threshold: {
      std::string s = "threshold:";
      for (std::size_t i = 0; i < cuts_.size(); ++i) {
        if (i) s += ",";
        std::snprintf(buf, sizeof(buf), "%.17g", cuts_[i]);
        s += buf;
      }
      return s;
    }
    case Kind::svc:
      std::snprintf(buf, sizeof(buf), "svc:d=%d", depth_);
      return buf;
    case Kind::explicit_bins: {
      std::string s = "explicit:";
      for (std::size_t i = 0; i < bins_.size(); ++i) {
        if (i) s += ";";
        s += bins_[i].str();
      }
      return s;
    }
  }
  return "";
}

std::vector<IntervalSet> Resolution::bins_meeting(const Interval& window) const {
  if (kind_ != Kind::uniform) return bins_;
  std::vector<IntervalSet> out;
  if (window.empty()) return out;
  const long long n_lo = static_cast<long long>(std::floor((window.lo - offset_) / width_));
  const long long n_hi = static_cast<long long>(std::ceil((window.hi - offset_) / width_));
  for (long long n = n_lo; n <= n_hi; ++n) {
    out.push_back(IntervalSet{Interval{offset_ + n * width_, offset_ + (n + 1) * width_}});
  }
  return out;
}

long long Resolution::locate(double x) const {
  if (kind_ == Kind::uniform) {
    return static_cast<long long>(std::floor((x - offset_) / width_));
  }
  for (std::size_t i = 0; i < bins_.size(); ++i) {
    if (bins_[i].contains(x)) return static_cast<long long>(i);
  }
  throw std::logic_error("resolution bins failed to cover a point");
}

bool Resolution::same_bin(double a, double b) const { return locate(a) == locate(b); }

double Resolution::max_bounded_bin_width() const {
  if (kind_ == Kind::uniform) return width_;
  double w = 0.0;
  for (const IntervalSet& b : bins_) {
    if (b.bounded()) w = std::max(w, b.hull_width());
  }
  return w;
}

IntervalSet r_t(const Resolution& res, double t, const Interval& window) {
  if (window.empty()) return IntervalSet{};
  if (!std::isfinite(window.lo) || !std::isfinite(window.hi)) {
    throw std::invalid_argument("r_t needs a bounded window");
  }
  const Interval shifted{window.lo - t, window.hi - t};
  const Interval hull{std::min(window.lo, shifted.lo), std::max(window.hi, shifted.hi)};
  IntervalSet acc;
  IntervalSet win{window};
  for (const IntervalSet& bin : res.bins_meeting(hull)) {
    IntervalSet self = intersect(bin, bin.translated(t));
    acc = unite(acc, intersect(self, win));
  }
  return acc;
}

std::vector<double> continuity_probe(const Resolution& res, const Interval& window,
                                     double t, const std::vector<double>& deltas) {
  const double base = r_t(res, t, window).measure();
  std::vector<double> out;
  out.reserve(deltas.size());
  for (double d : deltas) out.push_back(std::abs(r_t(res, t + d, window).measure() - base));
  return out;
}

NontrivialityResult nontriviality_search(const Resolution& res, const Interval& window) {
  const double len = window.length();
  if (!(len > 0.0) || !std::isfinite(len)) {
    throw std::invalid_argument("nontriviality_search needs a bounded window");
  }
  const double wmax = res.max_bounded_bin_width();
  const double t_max = (wmax > 0.0) ? std::max(2.0 * wmax, 0.0) : len;
  const double target = len / 2.0;
  const int n_scan = 10000;

  auto L = [&](double t) { return r_t(res, t, window).measure(); };

  double prev_t = 0.0;
  double prev_L = len;  // L(0) = lambda(D)
  double best_t = 0.0, best_gap = kInf;
  for (int i = 1; i <= n_scan; ++i) {
    const double t = t_max * static_cast<double>(i) / n_scan;
    const double Lt = L(t);
    if ((prev_L - target) * (Lt - target) <= 0.0) {
      // bracketed; bisect on the continuous L toward the half-measure level
      double a = prev_t, b = t, La = prev_L;
      for (int it = 0; it < 60; ++it) {
        const double m = 0.5 * (a + b);
        const double Lm = L(m);
        if ((La - target) * (Lm - target) <= 0.0) {
          b = m;
        } else {
          a = m;
          La = Lm;
        }
      }
      const double t_star = 0.5 * (a + b);
      const double ratio = L(t_star) / len;
      if (ratio > 0.0 && ratio < 1.0) return NontrivialityResult{t_star, ratio};
    }
    if (Lt > 0.0 && Lt < len) {
      const double gap = std::abs(Lt - target);
      if (gap < best_gap) {
        best_gap = gap;
        best_t = t;
      }
    }
    prev_t = t;
    prev_L = Lt;
  }
  if (std::isfinite(best_gap)) {
    return NontrivialityResult{best_t, L(best_t) / len};
  }
  std::ostringstream oss;
  oss << "nontriviality_search exhausted its budget on " << res.literal()
      << " (scanned t in (0," << t_max << "], L stayed trivial; L(t_max)=" << L(t_max) << ")";
  throw std::runtime_error(oss.str());
}

}  // namespace sorkinlab
