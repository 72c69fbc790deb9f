#include "gaze/heatmap_io.hpp"

#include <cmath>
#include <cstring>
#include <fstream>

#include "gaze/errors.hpp"

namespace gaze {

namespace {

constexpr char kMagic[4] = {'G', 'H', 'M', '1'};

void append_u32_le(std::string& out, std::uint32_t v) {
    out.push_back(static_cast<char>(v & 0xFF));
    out.push_back(static_cast<char>((v >> 8) & 0xFF));
    out.push_back(static_cast<char>((v >> 16) & 0xFF));
    out.push_back(static_cast<char>((v >> 24) & 0xFF));
}

std::uint32_t read_u32_le(const unsigned char* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw data_error("cannot open file: " + path.string());
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw data_error("read failure: " + path.string());
    return bytes;
}

} // namespace

std::string encode_ghm1(const Heatmap& h) {
    std::string out;
    out.reserve(12 + h.values.size() * 4);
    out.append(kMagic, 4);
    append_u32_le(out, static_cast<std::uint32_t>(h.width));
    append_u32_le(out, static_cast<std::uint32_t>(h.height));
    for (float v : h.values) {
        std::uint32_t bits;
        std::memcpy(&bits, &v, 4);
        append_u32_le(out, bits);
    }
    return out;
}

Heatmap decode_ghm1(const std::string& bytes) {
    if (bytes.size() < 4 || std::memcmp(bytes.data(), kMagic, 4) != 0) {
        throw data_error("GHM1: magic check failed (expected 'GHM1')");
    }
    if (bytes.size() < 12) {
        throw data_error("GHM1: truncated header");
    }
    const auto* p = reinterpret_cast<const unsigned char*>(bytes.data());
    const std::uint32_t width = read_u32_le(p + 4);
    const std::uint32_t height = read_u32_le(p + 8);
    if (width == 0 || height == 0) {
        throw data_error("GHM1: dimensions must be at least 1x1");
    }
    const std::uint64_t cells = static_cast<std::uint64_t>(width) * height;
    const std::uint64_t expected = 12 + cells * 4;
    if (bytes.size() < expected) {
        throw data_error("GHM1: truncated payload");
    }
    if (bytes.size() > expected) {
        throw data_error("GHM1: trailing bytes after payload");
    }
    Heatmap h(static_cast<int>(width), static_cast<int>(height));
    for (std::uint64_t i = 0; i < cells; ++i) {
        const std::uint32_t bits = read_u32_le(p + 12 + i * 4);
        float v;
        std::memcpy(&v, &bits, 4);
        if (!std::isfinite(v)) {
            throw data_error("GHM1: non-finite cell value");
        }
        h.values[i] = v;
    }
    return h;
}

Heatmap read_ghm1(const std::filesystem::path& path) {
    try {
        return decode_ghm1(read_file(path));
    } catch (const data_error& e) {
        throw data_error(path.string() + ": " + e.what());
    }
}

void write_ghm1(const Heatmap& h, const std::filesystem::path& path) {
    atomic_write(path, encode_ghm1(h));
}

std::string encode_pgm(const Heatmap& h) {
    std::string out = "P5\n" + std::to_string(h.width) + " " +
                      std::to_string(h.height) + "\n255\n";
    out.reserve(out.size() + h.values.size());
    for (float v : h.values) {
        const double scaled = std::lround(std::min(1.0, std::max(0.0, static_cast<double>(v))) * 255.0);
        out.push_back(static_cast<char>(static_cast<unsigned char>(scaled)));
    }
    return out;
}

void write_pgm(const Heatmap& h, const std::filesystem::path& path) {
    atomic_write(path, encode_pgm(h));
}

void atomic_write(const std::filesystem::path& path, const std::string& bytes) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw data_error("cannot open for writing: " + tmp.string());
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        if (!out) throw data_error("write failure: " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

} // namespace gaze
