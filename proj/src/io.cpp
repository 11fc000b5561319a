#include "qdw/io.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <system_error>

#include "qdw/errors.hpp"

namespace qdw {

std::string fmt17(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

void write_text_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    std::error_code ec;
    if (target.has_parent_path()) {
        fs::create_directories(target.parent_path(), ec);
        if (ec) throw io_error("cannot create directory " + target.parent_path().string() + ": " + ec.message());
    }
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw io_error("cannot open " + tmp.string() + " for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) throw io_error("short write to " + tmp.string());
    }
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp);
        throw io_error("cannot rename " + tmp.string() + " to " + path + ": " + ec.message());
    }
}

std::string trajectory_csv(const Trajectory& traj) {
    const bool with_env = !traj.envelope.empty();
    std::string out = "t_s,p_ll,p_lr,p_rl,p_rr,entropy_bits,concurrence,concurrence_sq";
    if (with_env) out += ",envelope";
    out += '\n';
    for (int i = 0; i < traj.grid.n_samples; ++i) {
        const auto& p = traj.probabilities[i];
        out += fmt17(traj.grid.time(i));
        out += ',';
        out += fmt17(p.p_ll);
        out += ',';
        out += fmt17(p.p_lr);
        out += ',';
        out += fmt17(p.p_rl);
        out += ',';
        out += fmt17(p.p_rr);
        out += ',';
        out += fmt17(traj.entropy_bits[i]);
        out += ',';
        out += fmt17(traj.concurrence[i]);
        out += ',';
        out += fmt17(traj.concurrence_sq[i]);
        if (with_env) {
            out += ',';
            out += fmt17(traj.envelope[i]);
        }
        out += '\n';
    }
    return out;
}

} // namespace qdw
