#include "dduio/trajectory_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

namespace dduio {

std::string format_double(double v)
{
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

double parse_double(const std::string& s)
{
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw data_error("malformed number: '" + s + "'");
    return v;
}

std::filesystem::path sidecar_path(const std::filesystem::path& csv_path)
{
    std::filesystem::path p = csv_path;
    p.replace_extension(".json");
    return p;
}

namespace {

void append_group(std::string& line, const Mat& sig, int t)
{
    for (int i = 0; i < sig.rows(); ++i) {
        line += ',';
        line += format_double(sig(i, t));
    }
}

std::vector<std::string> split(const std::string& line, char sep)
{
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    if (!line.empty() && line.back() == sep) out.emplace_back();
    return out;
}

}  // namespace

void write_trajectory(const std::filesystem::path& csv_path, const Trajectory& traj)
{
    traj.validate();
    std::ofstream csv(csv_path);
    if (!csv) throw data_error("cannot open for writing: " + csv_path.string());

    std::string header = "t";
    for (int i = 0; i < traj.m; ++i) header += ",u_" + std::to_string(i);
    if (traj.has_d)
        for (int i = 0; i < traj.m_d; ++i) header += ",d_" + std::to_string(i);
    if (traj.has_x)
        for (int i = 0; i < traj.n; ++i) header += ",x_" + std::to_string(i);
    for (int i = 0; i < traj.p; ++i) header += ",y_" + std::to_string(i);
    csv << header << '\n';

    for (int t = 0; t < traj.length(); ++t) {
        std::string line = std::to_string(t);
        append_group(line, traj.u, t);
        if (traj.has_d) append_group(line, traj.d, t);
        if (traj.has_x) append_group(line, traj.x, t);
        append_group(line, traj.y, t);
        csv << line << '\n';
    }
    if (!csv) throw data_error("write failed: " + csv_path.string());

    nlohmann::json meta = {
        {"n", traj.n},
        {"m", traj.m},
        {"p", traj.p},
        {"m_d", traj.m_d},
        {"T", traj.length()},
        {"has_d", traj.has_d},
        {"has_x", traj.has_x},
        {"seed", traj.meta.seed},
        {"T_s", traj.meta.t_s},
        {"label", traj.meta.label},
    };
    std::ofstream side(sidecar_path(csv_path));
    if (!side) throw data_error("cannot write sidecar for " + csv_path.string());
    side << meta.dump(2) << '\n';
}

Trajectory read_trajectory(const std::filesystem::path& csv_path)
{
    std::ifstream csv(csv_path);
    if (!csv) throw data_error("cannot open: " + csv_path.string());

    std::string header;
    if (!std::getline(csv, header)) throw data_error("empty file: " + csv_path.string());
    const auto names = split(header, ',');
    if (names.empty() || names[0] != "t")
        throw data_error("trajectory CSV must start with a 't' column");

    int m = 0, md = 0, n = 0, p = 0;
    bool saw_d = false, saw_x = false;
    for (std::size_t i = 1; i < names.size(); ++i) {
        const std::string& c = names[i];
        if (c.rfind("u_", 0) == 0)
            ++m;
        else if (c.rfind("d_", 0) == 0) {
            ++md;
            saw_d = true;
        } else if (c.rfind("x_", 0) == 0) {
            ++n;
            saw_x = true;
        } else if (c.rfind("y_", 0) == 0)
            ++p;
        else
            throw data_error("unknown trajectory column: " + c);
    }

    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(csv, line)) {
        if (line.empty()) continue;
        const auto cells = split(line, ',');
        if (cells.size() != names.size())
            throw data_error("row width mismatch in " + csv_path.string());
        std::vector<double> vals(cells.size() - 1);
        for (std::size_t i = 1; i < cells.size(); ++i)
            vals[i - 1] = parse_double(cells[i]);
        rows.push_back(std::move(vals));
    }
    const int T = static_cast<int>(rows.size());

    Trajectory traj;
    traj.m = m;
    traj.m_d = md;
    traj.p = p;
    traj.has_d = saw_d;
    traj.has_x = saw_x;
    traj.u = Mat(m, T);
    traj.d = Mat(md, T);
    traj.x = Mat(n, T);
    traj.y = Mat(p, T);
    for (int t = 0; t < T; ++t) {
        int k = 0;
        for (int i = 0; i < m; ++i) traj.u(i, t) = rows[t][k++];
        for (int i = 0; i < md; ++i) traj.d(i, t) = rows[t][k++];
        for (int i = 0; i < n; ++i) traj.x(i, t) = rows[t][k++];
        for (int i = 0; i < p; ++i) traj.y(i, t) = rows[t][k++];
    }

    // the sidecar carries dims the header cannot encode (n when x is absent)
    // plus reproducibility metadata
    traj.n = saw_x ? n : 0;
    const auto side = sidecar_path(csv_path);
    if (std::filesystem::exists(side)) {
        std::ifstream sf(side);
        nlohmann::json meta = nlohmann::json::parse(sf, nullptr, true);
        traj.n = meta.value("n", traj.n);
        traj.m_d = meta.value("m_d", traj.m_d);
        traj.meta.seed = meta.value("seed", std::uint64_t{0});
        traj.meta.t_s = meta.value("T_s", 0.0);
        traj.meta.label = meta.value("label", std::string{});
        if (meta.value("m", m) != m || meta.value("p", p) != p ||
            (saw_x && meta.value("n", n) != n) ||
            (saw_d && meta.value("m_d", md) != md))
            throw data_error("sidecar dims disagree with CSV header: " +
                             side.string());
    } else if (!saw_x) {
        // n unknown without states; leave 0, consumers needing n must get it
        // from a realization or sidecar
    }
    traj.validate();
    return traj;
}

}  // namespace dduio
