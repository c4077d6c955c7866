#include "laxkit/errors.hpp"
#include "laxkit/numerics.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace laxkit::num {

namespace {

constexpr const char* kMagic = "laxkit-gridfield 1";

std::string g17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string expect_line(std::istream& is, const std::string& key) {
  std::string line;
  if (!std::getline(is, line)) throw Error(ErrorCode::IoFailure, "snapshot ends before '" + key + "'");
  if (line.rfind(key + " ", 0) != 0 && line != key) {
    throw Error(ErrorCode::IoFailure, "snapshot: expected '" + key + "', got '" + line + "'");
  }
  return line.size() > key.size() ? line.substr(key.size() + 1) : std::string{};
}

}  // namespace

void write_snapshot(std::ostream& os, const GridField& f) {
  const Grid& g = f.grid();
  os << kMagic << '\n' << "axes";
  for (const auto& ax : g.axes()) os << ' ' << ax.name;
  os << "\norigin";
  for (const auto& ax : g.axes()) os << ' ' << g17(ax.origin);
  os << "\nh";
  for (const auto& ax : g.axes()) os << ' ' << g17(ax.h);
  os << "\ncounts";
  for (const auto& ax : g.axes()) os << ' ' << ax.count;
  os << "\nN " << f.dim() << '\n';
  const auto n = static_cast<Eigen::Index>(f.dim());
  for (std::size_t p = 0; p < f.size(); ++p) {
    const Mat m = f.at(p);
    for (Eigen::Index r = 0; r < n; ++r) {
      for (Eigen::Index c = 0; c < n; ++c) {
        if (r + c > 0) os << ' ';
        os << g17(m(r, c).real()) << ' ' << g17(m(r, c).imag());
      }
    }
    os << '\n';
  }
  if (!os) throw Error(ErrorCode::IoFailure, "failed to write snapshot");
}

GridField read_snapshot(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != kMagic) throw Error(ErrorCode::IoFailure, "not a grid field snapshot");
  std::vector<Axis> axes;
  {
    std::istringstream ss(expect_line(is, "axes"));
    std::string name;
    while (ss >> name) axes.push_back({name, 0, 0, 0});
  }
  auto read_numbers = [&](const std::string& key, auto assign) {
    std::istringstream ss(expect_line(is, key));
    for (auto& ax : axes) {
      if (!assign(ss, ax)) throw Error(ErrorCode::IoFailure, "snapshot: bad '" + key + "' line");
    }
  };
  read_numbers("origin", [](std::istream& s, Axis& a) { return static_cast<bool>(s >> a.origin); });
  read_numbers("h", [](std::istream& s, Axis& a) { return static_cast<bool>(s >> a.h); });
  read_numbers("counts", [](std::istream& s, Axis& a) { return static_cast<bool>(s >> a.count); });
  std::size_t n = 0;
  {
    std::istringstream ss(expect_line(is, "N"));
    if (!(ss >> n)) throw Error(ErrorCode::IoFailure, "snapshot: bad 'N' line");
  }
  GridField f(Grid(std::move(axes)), n);
  const auto dim = static_cast<Eigen::Index>(n);
  for (std::size_t p = 0; p < f.size(); ++p) {
    Mat m(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r) {
      for (Eigen::Index c = 0; c < dim; ++c) {
        double re = 0, im = 0;
        if (!(is >> re >> im)) throw Error(ErrorCode::IoFailure, "snapshot ends early");
        m(r, c) = Complex(re, im);
      }
    }
    f.set(p, m);
  }
  return f;
}

}  // namespace laxkit::num
