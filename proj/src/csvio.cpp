#include "isotrack/csvio.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "isotrack/errors.hpp"

namespace isotrack {

namespace {

constexpr const char* kBaseHeader = "t,x,y,theta,d,d_dot,u,s";
constexpr const char* kDiagHeader = "t,x,y,theta,d,d_dot,u,s,lambda,rho,kappa,omega";

std::string full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

void write_trajectory(std::ostream& out, const SimResult& result, const Metadata& meta) {
  for (const auto& [k, v] : meta) out << "# " << k << " = " << v << '\n';
  out << (result.diagnostics ? kDiagHeader : kBaseHeader) << '\n';
  for (const TrajectoryRow& r : result.rows) {
    out << full(r.t) << ',' << full(r.x) << ',' << full(r.y) << ',' << full(r.theta)
        << ',' << full(r.d) << ',' << full(r.d_dot) << ',' << full(r.u) << ','
        << full(r.s);
    if (result.diagnostics)
      out << ',' << full(r.lambda) << ',' << full(r.rho) << ',' << full(r.kappa) << ','
          << full(r.omega);
    out << '\n';
  }
}

std::string trajectory_to_string(const SimResult& result, const Metadata& meta) {
  std::ostringstream os;
  write_trajectory(os, result, meta);
  return os.str();
}

TrajectoryFile read_trajectory(std::istream& in) {
  TrajectoryFile file;
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto eq = line.find('=');
      if (eq != std::string::npos)
        file.meta[trim(line.substr(1, eq - 1))] = trim(line.substr(eq + 1));
      continue;
    }
    if (!have_header) {
      const std::string h = trim(line);
      if (h == kDiagHeader) file.diagnostics = true;
      else if (h != kBaseHeader) throw Error("unrecognized trajectory header: " + h);
      have_header = true;
      continue;
    }
    TrajectoryRow row;
    double* fields[12] = {&row.t, &row.x, &row.y, &row.theta, &row.d, &row.d_dot,
                          &row.u, &row.s, &row.lambda, &row.rho, &row.kappa, &row.omega};
    const int expected = file.diagnostics ? 12 : 8;
    std::stringstream ls(line);
    std::string cell;
    int i = 0;
    while (std::getline(ls, cell, ',') && i < expected) *fields[i++] = std::stod(cell);
    if (i != expected) throw Error("trajectory row has the wrong number of columns");
    file.rows.push_back(row);
  }
  if (!have_header) throw Error("trajectory stream has no header row");
  return file;
}

TrajectoryFile read_trajectory_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open trajectory file: " + path);
  return read_trajectory(in);
}

void write_trajectory_file(const std::string& path, const SimResult& result,
                           const Metadata& meta) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write trajectory file: " + path);
  write_trajectory(out, result, meta);
}

}  // namespace isotrack
