#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qtradeoff/csv.hpp"
#include "qtradeoff/hypercube.hpp"

namespace qtradeoff {

using nlohmann::json;

std::string cache_file_name(const GridSpec& grid)
{
    char buf[128];
    std::snprintf(buf, sizeof buf, "hypercube_k%d_s%d_a%d_d%d_tol%.3g.json", grid.k, grid.s_grid,
                  grid.alpha_grid, grid.depth_cap, grid.converge_tol);
    return buf;
}

std::string cache_to_json(const HypercubeResult& result)
{
    json doc;
    doc["format_version"] = kCacheFormatVersion;
    doc["k"] = result.grid.k;
    doc["s_grid"] = result.grid.s_grid;
    doc["alpha_grid"] = result.grid.alpha_grid;
    doc["depth_cap"] = result.grid.depth_cap;
    doc["converge_tol"] = result.grid.converge_tol;
    doc["depth_reached"] = result.depth_reached;
    doc["residual"] = result.residual;
    doc["converged"] = result.converged;
    doc["T_row"] = result.t_row;
    return doc.dump(1);
}

std::optional<HypercubeResult> cache_from_json(const std::string& text, const GridSpec& grid)
{
    const json doc = json::parse(text, nullptr, false);
    if (doc.is_discarded() || !doc.is_object())
        return std::nullopt;
    try {
        if (doc.at("format_version").get<int>() != kCacheFormatVersion)
            return std::nullopt;
        if (doc.at("k").get<int>() != grid.k || doc.at("s_grid").get<int>() != grid.s_grid ||
            doc.at("alpha_grid").get<int>() != grid.alpha_grid ||
            doc.at("depth_cap").get<int>() != grid.depth_cap ||
            doc.at("converge_tol").get<double>() != grid.converge_tol)
            return std::nullopt;
        HypercubeResult r;
        r.grid = grid;
        r.depth_reached = doc.at("depth_reached").get<int>();
        r.residual = doc.at("residual").get<double>();
        r.converged = doc.at("converged").get<bool>();
        r.t_row = doc.at("T_row").get<std::vector<double>>();
        if (static_cast<int>(r.t_row.size()) != grid.s_grid)
            return std::nullopt;
        return r;
    } catch (const json::exception&) {
        return std::nullopt;
    }
}

std::optional<HypercubeResult> load_cached(const std::filesystem::path& dir, const GridSpec& grid)
{
    std::ifstream in(dir / cache_file_name(grid));
    if (!in)
        return std::nullopt;
    std::stringstream ss;
    ss << in.rdbuf();
    return cache_from_json(ss.str(), grid);
}

void store_cached(const std::filesystem::path& dir, const HypercubeResult& result)
{
    std::filesystem::create_directories(dir);
    write_file_atomic(dir / cache_file_name(result.grid), cache_to_json(result));
}

}  // namespace qtradeoff
