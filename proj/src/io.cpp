#include "psifrac/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace psifrac {

std::string format_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::ofstream open_out(const std::string& path)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open output file '" + path + "'");
    return out;
}

} // namespace

void write_solution_csv(const std::string& path, const GridFunction& y)
{
    std::ofstream out = open_out(path);
    out << "t,psi_increment,weighted_value,unweighted_value\n";
    const Frame& fr = y.frame();
    for (int i = 0; i <= y.N(); ++i) {
        const double w = y.weighted_at(i);
        double value;
        if (i == 0)
            value = fr.xi() == 1.0 ? w
                    : w == 0.0     ? 0.0
                                   : std::copysign(INFINITY, w);
        else
            value = y.value_at(i);
        out << format_double(fr.mesh().node(i)) << ',' << format_double(fr.u_at(i)) << ','
            << format_double(w) << ',' << format_double(value) << '\n';
    }
}

void write_profile_csv(const std::string& path, const Frame& frame,
                       std::span<const double> values, const std::string& value_name)
{
    std::ofstream out = open_out(path);
    out << "t,psi_increment," << value_name << '\n';
    for (int i = 0; i <= frame.N(); ++i)
        out << format_double(frame.mesh().node(i)) << ',' << format_double(frame.u_at(i))
            << ',' << format_double(values[static_cast<std::size_t>(i)]) << '\n';
}

nlohmann::json report_to_json(const SolverReport& report)
{
    nlohmann::json j;
    j["converged"] = report.converged;
    j["iterations"] = report.iterations;
    j["final_residual"] = report.final_residual;
    j["existence_value"] = report.existence_value;
    j["existence_value_proof"] = report.existence_value_proof;
    j["existence_ok"] = report.existence_ok;
    j["radius_R"] = report.radius_R;
    j["params_source"] =
        report.params_source == ParamSource::Estimated ? "estimated" : "user";
    j["increment_history"] = report.increment_history;
    return j;
}

void write_json_file(const std::string& path, const nlohmann::json& j)
{
    std::ofstream out = open_out(path);
    out << j.dump(2) << '\n';
}

} // namespace psifrac
