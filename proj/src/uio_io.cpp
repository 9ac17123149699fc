#include <fstream>

#include <json.hpp>

#include "dduio/uio.hpp"

namespace dduio {

namespace {

using nlohmann::json;

json mat_to_json(const Mat& m)
{
    std::vector<double> entries(m.data(),
                                m.data() + static_cast<std::size_t>(m.rows()) *
                                               static_cast<std::size_t>(m.cols()));
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", entries}};
}

Mat mat_from_json(const json& j)
{
    const int rows = j.at("rows").get<int>();
    const int cols = j.at("cols").get<int>();
    auto data = j.at("data").get<std::vector<double>>();
    return Mat(rows, cols, std::move(data));
}

json tol_to_json(const Tolerance& t)
{
    return json{{"rank_rel", t.rank_rel},
                {"abs_floor", t.abs_floor},
                {"schur_margin", t.schur_margin}};
}

Tolerance tol_from_json(const json& j)
{
    Tolerance t;
    t.rank_rel = j.at("rank_rel").get<double>();
    t.abs_floor = j.at("abs_floor").get<double>();
    t.schur_margin = j.at("schur_margin").get<double>();
    return t;
}

}  // namespace

std::string realization_to_json(const UioRealization& r)
{
    json j = {
        {"n", r.n},
        {"mp", r.mp},
        {"a_uio", mat_to_json(r.a_uio)},
        {"b_uio", mat_to_json(r.b_uio)},
        {"d_uio", mat_to_json(r.d_uio)},
        {"gain", mat_to_json(r.gain)},
        {"source_digest", r.source_digest},
        {"tolerance", tol_to_json(r.tol)},
    };
    return j.dump(2);
}

UioRealization realization_from_json(const std::string& text)
{
    const json j = json::parse(text);
    UioRealization r;
    try {
        r.n = j.at("n").get<int>();
        r.mp = j.at("mp").get<int>();
        r.a_uio = mat_from_json(j.at("a_uio"));
        r.b_uio = mat_from_json(j.at("b_uio"));
        r.d_uio = mat_from_json(j.at("d_uio"));
        r.gain = mat_from_json(j.at("gain"));
        r.source_digest = j.at("source_digest").get<std::uint64_t>();
        r.tol = tol_from_json(j.at("tolerance"));
    } catch (const json::exception& e) {
        throw data_error(std::string("malformed realization JSON: ") + e.what());
    }
    if (r.a_uio.rows() != r.n || r.a_uio.cols() != r.n ||
        r.b_uio.rows() != r.n || r.b_uio.cols() != r.mp ||
        r.d_uio.rows() != r.n || r.d_uio.cols() != r.mp ||
        r.gain.rows() != r.n || r.gain.cols() != 2 * r.mp + r.n)
        throw data_error("realization JSON has inconsistent dimensions");
    return r;
}

void write_realization(const std::filesystem::path& path, const UioRealization& r)
{
    std::ofstream f(path);
    if (!f) throw data_error("cannot open for writing: " + path.string());
    f << realization_to_json(r) << '\n';
    if (!f) throw data_error("write failed: " + path.string());
}

UioRealization read_realization(const std::filesystem::path& path)
{
    std::ifstream f(path);
    if (!f) throw data_error("cannot open: " + path.string());
    std::string text((std::istreambuf_iterator<char>(f)),
                     std::istreambuf_iterator<char>());
    return realization_from_json(text);
}

std::string report_to_json(const ExistenceReport& rep)
{
    json j = {
        {"exists", rep.exists},
        {"kernel_inclusion", rep.kernel_inclusion},
        {"rank_stack3", rep.rank_stack3},
        {"rank_stack4", rep.rank_stack4},
        {"spectral_radius_a_uio", rep.spectral_radius_a_uio},
        {"schur", rep.schur},
        {"pe_checked", to_string(rep.pe)},
        {"cond_stack3", rep.cond_stack3},
        {"tolerance", tol_to_json(rep.tol)},
        {"source_digest", rep.source_digest},
    };
    return j.dump(2);
}

}  // namespace dduio
