#include "qiopa/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

namespace qiopa {

std::string format_g9(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

std::string curve_to_csv(const SweepCurve& curve) {
    bool with_prob = false;
    for (const auto& s : curve.samples) with_prob = with_prob || s.success_prob.has_value();

    std::ostringstream os;
    os << (with_prob ? "x,r,d,success_prob\n" : "x,r,d\n");
    for (const auto& s : curve.samples) {
        os << format_g9(s.x) << ',' << format_g9(s.R) << ',' << format_g9(s.value);
        if (with_prob) os << ',' << format_g9(s.success_prob.value_or(1.0));
        os << '\n';
    }
    return os.str();
}

nlohmann::json curve_to_json(const SweepCurve& curve) {
    nlohmann::json j;
    j["family"] = family_name(curve.family);
    j["param"] = curve.param;
    if (curve.of_k) j["k"] = *curve.of_k;
    j["cutoff"] = curve.cutoff;
    j["tail_tol"] = curve.tail_tol;
    j["n0"] = curve.n0;
    nlohmann::json samples = nlohmann::json::array();
    for (const auto& s : curve.samples) {
        nlohmann::json row;
        row["x"] = s.x;
        row["r"] = s.R;
        row["d"] = s.value;
        if (s.success_prob) row["success_prob"] = *s.success_prob;
        samples.push_back(std::move(row));
    }
    j["samples"] = std::move(samples);
    return j;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    namespace fs = std::filesystem;
    std::error_code ec;
    if (path.has_parent_path()) {
        fs::create_directories(path.parent_path(), ec);
        if (ec) throw std::runtime_error("write_file_atomic: cannot create " +
                                         path.parent_path().string() + ": " + ec.message());
    }
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("write_file_atomic: cannot open " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw std::runtime_error("write_file_atomic: short write to " + tmp.string());
    }
    fs::rename(tmp, path, ec);
    if (ec) throw std::runtime_error("write_file_atomic: rename to " + path.string() +
                                     " failed: " + ec.message());
}

}  // namespace qiopa
