#include "urnlab/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace urnlab {

namespace fs = std::filesystem;

std::string format_double(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

void atomic_write_file(const fs::path& path, const std::string& content) {
    const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
    if (!fs::is_directory(dir))
        throw std::runtime_error("atomic_write_file: no such directory: " + dir.string());
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("atomic_write_file: cannot open " + tmp.string());
        out << content;
        if (!out.flush()) {
            std::error_code ec;
            fs::remove(tmp, ec);
            throw std::runtime_error("atomic_write_file: write failed for " + tmp.string());
        }
    }
    fs::rename(tmp, path);
}

Eigen::MatrixXd load_matrix_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_matrix_file: cannot open " + path.string());
    std::vector<std::vector<double>> rows;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream fields(line);
        std::vector<double> row;
        std::string token;
        while (fields >> token) {
            double value = 0.0;
            std::size_t used = 0;
            try {
                value = std::stod(token, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != token.size() || !std::isfinite(value))
                throw std::runtime_error("load_matrix_file: " + path.string() + " row " +
                                         std::to_string(line_no) + " column " +
                                         std::to_string(row.size() + 1) + ": not a finite number: '" +
                                         token + "'");
            if (value < 0.0)
                throw std::runtime_error("load_matrix_file: " + path.string() + " row " +
                                         std::to_string(line_no) + " column " +
                                         std::to_string(row.size() + 1) + ": negative entry");
            row.push_back(value);
        }
        if (!row.empty()) rows.push_back(std::move(row));
    }
    if (rows.empty()) throw std::runtime_error("load_matrix_file: " + path.string() + " is empty");
    const std::size_t d = rows.size();
    for (std::size_t i = 0; i < d; ++i) {
        if (rows[i].size() != d)
            throw std::runtime_error("load_matrix_file: " + path.string() + " row " +
                                     std::to_string(i + 1) + " has " +
                                     std::to_string(rows[i].size()) + " entries, expected " +
                                     std::to_string(d) + " (matrix must be square)");
    }
    Eigen::MatrixXd m(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    return m;
}

std::string trajectory_csv(const TrajectoryRecord& record) {
    std::ostringstream out;
    const int d = record.model.d;
    out << "step";
    for (int i = 1; i <= d; ++i) out << ",x" << i;
    out << "\n";
    for (std::size_t t = 0; t < record.size(); ++t) {
        out << record.sample_steps[t];
        for (int i = 0; i < d; ++i) out << ',' << format_double(record.points[t].coords[i]);
        out << "\n";
    }
    return out.str();
}

nlohmann::json to_json(const ModelSpec& model) {
    nlohmann::json j;
    switch (model.kind) {
        case ModelKind::Symmetric: j["kind"] = model.d == 2 ? "two-type" : "symmetric"; break;
        case ModelKind::Cyclic: j["kind"] = "cyclic"; break;
        case ModelKind::General: j["kind"] = "general"; break;
    }
    j["d"] = model.d;
    j["beta"] = model.beta;
    if (model.kind != ModelKind::General) j["a"] = model.a;
    std::vector<std::vector<double>> matrix(static_cast<std::size_t>(model.d));
    for (int i = 0; i < model.d; ++i)
        for (int k = 0; k < model.d; ++k) matrix[static_cast<std::size_t>(i)].push_back(model.A(i, k));
    j["A"] = matrix;
    return j;
}

nlohmann::json to_json(const StationaryPoint& point) {
    nlohmann::json j;
    j["location"] = std::vector<double>(point.location.coords.data(),
                                        point.location.coords.data() + point.location.coords.size());
    if (point.r)
        j["r"] = *point.r;
    else
        j["r"] = nullptr;
    if (point.axis)
        j["axis"] = *point.axis;
    else
        j["axis"] = nullptr;
    j["stability"] = to_string(point.stability);
    j["multiplicity"] = point.multiplicity;
    return j;
}

nlohmann::json to_json(const LimitClassification& verdict) {
    nlohmann::json j;
    j["verdict"] = to_string(verdict.verdict);
    if (verdict.point_index) {
        j["point_index"] = *verdict.point_index;
        j["final_distance"] = verdict.final_distance;
    }
    if (verdict.verdict == Verdict::Cycling || verdict.winding_turns > 0.0) {
        j["winding_turns"] = verdict.winding_turns;
        j["tail_min_radius"] = verdict.tail_min_radius;
        j["tail_max_radius"] = verdict.tail_max_radius;
    }
    j["tail_oscillation"] = verdict.tail_oscillation;
    j["tail_mean"] = std::vector<double>(verdict.tail_mean.data(),
                                         verdict.tail_mean.data() + verdict.tail_mean.size());
    return j;
}

nlohmann::json to_json(const TrajectoryRecord& record) {
    nlohmann::json j;
    j["seed"] = record.seed;
    j["model"] = to_json(record.model);
    j["steps"] = record.sample_steps;
    nlohmann::json points = nlohmann::json::array();
    for (const SimplexPoint& p : record.points)
        points.push_back(std::vector<double>(p.coords.data(), p.coords.data() + p.coords.size()));
    j["points"] = std::move(points);
    j["final_state"] = {{"counts", std::vector<std::int64_t>(
                                       record.final_state.counts.data(),
                                       record.final_state.counts.data() +
                                           record.final_state.counts.size())},
                        {"n0", record.final_state.n0},
                        {"n", record.final_state.n}};
    return j;
}

nlohmann::json to_json(const EnsembleSummary& summary) {
    nlohmann::json j;
    j["model"] = to_json(summary.model);
    j["trajectories"] = summary.n_traj;
    j["steps"] = summary.steps;
    j["seeds"] = summary.seeds;
    nlohmann::json points = nlohmann::json::array();
    for (const StationaryPoint& p : summary.points) points.push_back(to_json(p));
    j["stationary_points"] = std::move(points);
    j["hits"] = summary.hits;
    j["cycling"] = summary.cycling;
    j["undetermined"] = summary.undetermined;
    nlohmann::json verdicts = nlohmann::json::array();
    for (const LimitClassification& v : summary.verdicts) verdicts.push_back(to_json(v));
    j["verdicts"] = std::move(verdicts);
    return j;
}

nlohmann::json to_json(const SymmetricPhase& phase) {
    nlohmann::json j;
    j["phase"] = to_string(phase.label);
    if (phase.beta1)
        j["beta1"] = *phase.beta1;
    else
        j["beta1"] = nullptr;
    if (phase.upper)
        j["upper"] = *phase.upper;
    else
        j["upper"] = nullptr;
    j["near_boundary"] = phase.near_boundary;
    return j;
}

std::string phase_grid_csv(const PhaseGrid& grid) {
    std::ostringstream out;
    const bool with_extra = !grid.extra_stable.empty();
    const bool with_empirical = !grid.empirical.empty();
    out << "a,beta,label";
    if (with_extra) out << ",extra_stable";
    if (with_empirical) out << ",empirical";
    out << "\n";
    for (std::size_t i = 0; i < grid.a_grid.size(); ++i) {
        for (std::size_t j = 0; j < grid.beta_grid.size(); ++j) {
            const std::size_t cell = grid.index(i, j);
            out << format_double(grid.a_grid[i]) << ',' << format_double(grid.beta_grid[j]) << ','
                << grid.labels[cell];
            if (with_extra) out << ',' << grid.extra_stable[cell];
            if (with_empirical) out << ',' << grid.empirical[cell];
            out << "\n";
        }
    }
    return out.str();
}

std::string boundary_curves_csv(const BoundaryCurves& curves) {
    std::ostringstream out;
    out << "a,beta,curve_id\n";
    for (std::size_t i = 0; i < curves.a.size(); ++i)
        out << format_double(curves.a[i]) << ',' << format_double(curves.beta1_curve[i])
            << ",beta1\n";
    for (std::size_t i = 0; i < curves.a.size(); ++i)
        out << format_double(curves.a[i]) << ',' << format_double(curves.upper_curve[i])
            << ",upper\n";
    return out.str();
}

std::string crossings_csv(const std::vector<BoundaryCrossing>& crossings,
                          const std::string& curve_id) {
    std::ostringstream out;
    out << "a,beta,curve_id\n";
    for (const BoundaryCrossing& c : crossings)
        out << format_double(c.a) << ',' << format_double(c.beta) << ',' << curve_id << "\n";
    return out.str();
}

nlohmann::json to_json(const PhaseGrid& grid) {
    nlohmann::json j;
    j["a_grid"] = grid.a_grid;
    j["beta_grid"] = grid.beta_grid;
    j["labels"] = grid.labels;
    if (!grid.extra_stable.empty()) j["extra_stable"] = grid.extra_stable;
    if (!grid.empirical.empty()) j["empirical"] = grid.empirical;
    return j;
}

}  // namespace urnlab
