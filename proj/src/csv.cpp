#include "qtradeoff/csv.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace qtradeoff {

std::string format_base(double value)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", value);
    return buf;
}

std::string format_exponent(double value)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", value);
    return buf;
}

std::string format_curve_row(const TradeoffPoint& p, const std::string& label)
{
    return format_exponent(p.space_exp) + ',' + format_exponent(p.time_exp) + ',' +
           format_base(p.space_base()) + ',' + format_base(p.time_base()) + ',' + label;
}

std::string curve_to_csv(const TradeoffCurve& curve)
{
    std::string out = std::string(kCurveCsvHeader) + '\n';
    for (const auto& p : curve.points())
        out += format_curve_row(p, p.label) + '\n';
    return out;
}

std::string named_curves_to_csv(const std::vector<std::pair<std::string, TradeoffCurve>>& curves)
{
    std::string out = std::string(kCurveCsvHeader) + '\n';
    for (const auto& [name, curve] : curves)
        for (const auto& p : curve.points())
            out += format_curve_row(p, name) + '\n';
    return out;
}

std::vector<TradeoffPoint> parse_curve_csv(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line) || line != kCurveCsvHeader)
        throw std::runtime_error("curve csv: missing header '" + std::string(kCurveCsvHeader) + "'");
    std::vector<TradeoffPoint> points;
    int row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty())
            continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (fields.size() < 4 && std::getline(ss, field, ','))
            fields.push_back(field);
        std::string label;
        std::getline(ss, label);
        if (fields.size() != 4)
            throw std::runtime_error("curve csv: row " + std::to_string(row) + " has too few fields");
        try {
            points.push_back({std::stod(fields[0]), std::stod(fields[1]), label});
        } catch (const std::exception&) {
            throw std::runtime_error("curve csv: row " + std::to_string(row) + " is not numeric");
        }
    }
    return points;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content)
{
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        out << content;
        if (!out.flush())
            throw std::runtime_error("write failed: " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace qtradeoff
