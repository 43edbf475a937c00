#include "stokesmg/io.hpp"

#include <json.hpp> // vendored nlohmann/json

#include <fstream>
#include <iomanip>
#include <ostream>
#include <stdexcept>

namespace stokesmg {

void write_matrix_coordinate(const SparseMatrix& m, std::ostream& out) {
  out << std::setprecision(17);
  for (int k = 0; k < m.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(m, k); it; ++it)
      out << it.row() << ' ' << it.col() << ' ' << it.value() << '\n';
}

void write_matrix_coordinate(const SparseMatrix& m, const std::string& path) {
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("cannot open " + path);
  write_matrix_coordinate(m, out);
}

void write_state_csv(const Mesh& mesh, const DofMaps& dofs, const StateVector& x, double alpha,
                     std::ostream& out) {
  out << std::setprecision(17);
  out << "node_id,x,y,field,value\n";
  const Index n = dofs.interior_count();
  const auto write_velocity_field = [&](const char* base, auto field) {
    for (int node = 0; node < dofs.p2_count(); ++node) {
      const int idx = dofs.p2_interior_index[node];
      for (int c = 0; c < 2; ++c) {
        const double value = (idx >= 0) ? field[c * n + idx] : 0.0;
        out << node << ',' << dofs.p2_coords[node].x() << ',' << dofs.p2_coords[node].y() << ','
            << base << (c == 0 ? "_x" : "_y") << ',' << value << '\n';
      }
    }
  };
  const auto write_pressure_field = [&](const char* name, auto field) {
    for (int node = 0; node < dofs.p1_count; ++node)
      out << node << ',' << mesh.vertices[node].x() << ',' << mesh.vertices[node].y() << ','
          << name << ',' << field[node] << '\n';
  };

  write_velocity_field("u", x.u());
  write_pressure_field("p", x.p());
  write_velocity_field("lambda", x.lam());
  write_pressure_field("mu", x.mu());
  write_velocity_field("f", recover_control(x, alpha));
}

void write_state_csv(const Mesh& mesh, const DofMaps& dofs, const StateVector& x, double alpha,
                     const std::string& path) {
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("cannot open " + path);
  write_state_csv(mesh, dofs, x, alpha, out);
}

std::string cycle_name(CycleType cycle) { return cycle == CycleType::w ? "w" : "v"; }

std::string report_json(const ConvergenceReport& report) {
  nlohmann::json j;
  j["k"] = report.level;
  j["alpha"] = report.alpha;
  j["nu_pre"] = report.nu_pre;
  j["nu_post"] = report.nu_post;
  j["cycle"] = cycle_name(report.cycle);
  j["tau"] = report.tau;
  j["eps"] = report.eps;
  j["n"] = report.iterations;
  j["q"] = report.rate;
  j["converged"] = report.converged;
  j["residual_norms"] = report.residual_norms;
  return j.dump();
}

} // namespace stokesmg
