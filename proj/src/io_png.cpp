#include <png.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>

#include "textcc/io.hpp"

namespace textcc {
namespace {

std::string lower_extension(const std::string& path) {
    const auto dot = path.find_last_of('.');
    if (dot == std::string::npos) return {};
    std::string ext = path.substr(dot);
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return ext;
}

std::vector<std::uint8_t> map_to_gray(const ProbabilityMap& map) {
    map.validate();
    std::vector<std::uint8_t> gray(map.values.size());
    for (std::size_t i = 0; i < map.values.size(); ++i)
        gray[i] = static_cast<std::uint8_t>(std::lround(map.values[i] * 255.0));
    return gray;
}

ProbabilityMap gray_to_map(const std::vector<std::uint8_t>& gray, int w, int h) {
    ProbabilityMap map(w, h);
    for (std::size_t i = 0; i < gray.size(); ++i) map.values[i] = gray[i] / 255.0;
    return map;
}

// Next PGM header token, skipping whitespace and '#' comments.
std::string pgm_token(std::istream& in, const std::string& path) {
    int c = in.get();
    while (c != EOF) {
        if (c == '#') {
            while (c != EOF && c != '\n') c = in.get();
        } else if (std::isspace(c)) {
            c = in.get();
        } else {
            break;
        }
    }
    if (c == EOF) throw IoError(path + ": truncated graymap header");
    std::string tok;
    while (c != EOF && !std::isspace(c)) {
        tok.push_back(static_cast<char>(c));
        c = in.get();
    }
    return tok;
}

int pgm_int(std::istream& in, const std::string& path, const char* what) {
    const std::string tok = pgm_token(in, path);
    try {
        std::size_t used = 0;
        const int v = std::stoi(tok, &used);
        if (used != tok.size() || v < 0) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw IoError(path + ": bad graymap " + what + " \"" + tok + "\"");
    }
}

struct PngReader {
    std::FILE* file = nullptr;
    png_structp png = nullptr;
    png_infop info = nullptr;

    ~PngReader() {
        if (png) png_destroy_read_struct(&png, info ? &info : nullptr, nullptr);
        if (file) std::fclose(file);
    }
};

struct PngWriter {
    std::FILE* file = nullptr;
    png_structp png = nullptr;
    png_infop info = nullptr;

    ~PngWriter() {
        if (png) png_destroy_write_struct(&png, info ? &info : nullptr);
        if (file) std::fclose(file);
    }
};

void write_png_channels(const std::string& path, const std::vector<std::uint8_t>& data, int w,
                        int h, int channels, int color_type) {
    if (w <= 0 || h <= 0)
        throw std::invalid_argument("image dimensions must be positive, got " +
                                    std::to_string(w) + "x" + std::to_string(h));
    if (data.size() != static_cast<std::size_t>(w) * h * channels)
        throw std::invalid_argument("pixel buffer size does not match " + std::to_string(w) + "x" +
                                    std::to_string(h));
    PngWriter ctx;
    ctx.file = std::fopen(path.c_str(), "wb");
    if (!ctx.file) throw IoError("cannot write " + path);
    ctx.png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (ctx.png) ctx.info = png_create_info_struct(ctx.png);
    if (!ctx.png || !ctx.info) throw IoError(path + ": png writer allocation failed");
    if (setjmp(png_jmpbuf(ctx.png))) throw IoError(path + ": png write failed");
    png_init_io(ctx.png, ctx.file);
    png_set_IHDR(ctx.png, ctx.info, static_cast<png_uint_32>(w), static_cast<png_uint_32>(h), 8,
                 color_type, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
                 PNG_FILTER_TYPE_DEFAULT);
    png_write_info(ctx.png, ctx.info);
    for (int y = 0; y < h; ++y) {
        png_write_row(ctx.png, const_cast<png_bytep>(data.data()) +
                                   static_cast<std::size_t>(y) * w * channels);
    }
    png_write_end(ctx.png, ctx.info);
    if (std::fflush(ctx.file) != 0) throw IoError("write failed for " + path);
}

}  // namespace

ProbabilityMap read_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    const std::string magic = pgm_token(in, path);
    if (magic != "P5" && magic != "P2")
        throw IoError(path + ": not a graymap (magic \"" + magic + "\", want P5 or P2)");
    const int w = pgm_int(in, path, "width");
    const int h = pgm_int(in, path, "height");
    const int maxval = pgm_int(in, path, "maxval");
    if (w <= 0 || h <= 0)
        throw IoError(path + ": bad graymap dimensions " + std::to_string(w) + "x" +
                      std::to_string(h));
    if (maxval != 255)
        throw IoError(path + ": unsupported maxval " + std::to_string(maxval) + " (want 255)");
    std::vector<std::uint8_t> gray(static_cast<std::size_t>(w) * h);
    if (magic == "P5") {
        in.read(reinterpret_cast<char*>(gray.data()), static_cast<std::streamsize>(gray.size()));
        if (in.gcount() != static_cast<std::streamsize>(gray.size()))
            throw IoError(path + ": truncated graymap pixel data");
    } else {
        for (auto& g : gray) g = static_cast<std::uint8_t>(pgm_int(in, path, "pixel"));
    }
    return gray_to_map(gray, w, h);
}

void write_pgm(const std::string& path, const std::vector<std::uint8_t>& gray, int w, int h) {
    if (w <= 0 || h <= 0)
        throw std::invalid_argument("image dimensions must be positive, got " +
                                    std::to_string(w) + "x" + std::to_string(h));
    if (gray.size() != static_cast<std::size_t>(w) * h)
        throw std::invalid_argument("pixel buffer size does not match " + std::to_string(w) + "x" +
                                    std::to_string(h));
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << "P5\n" << w << ' ' << h << "\n255\n";
    out.write(reinterpret_cast<const char*>(gray.data()), static_cast<std::streamsize>(gray.size()));
    out.flush();
    if (!out) throw IoError("write failed for " + path);
}

ProbabilityMap read_png_gray(const std::string& path) {
    PngReader ctx;
    ctx.file = std::fopen(path.c_str(), "rb");
    if (!ctx.file) throw IoError("cannot open " + path);
    ctx.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (ctx.png) ctx.info = png_create_info_struct(ctx.png);
    if (!ctx.png || !ctx.info) throw IoError(path + ": png reader allocation failed");
    if (setjmp(png_jmpbuf(ctx.png))) throw IoError(path + ": png read failed");
    png_init_io(ctx.png, ctx.file);
    png_read_info(ctx.png, ctx.info);

    const png_uint_32 w = png_get_image_width(ctx.png, ctx.info);
    const png_uint_32 h = png_get_image_height(ctx.png, ctx.info);
    const int color_type = png_get_color_type(ctx.png, ctx.info);
    const int bit_depth = png_get_bit_depth(ctx.png, ctx.info);
    if (color_type != PNG_COLOR_TYPE_GRAY)
        throw IoError(path + ": expected an 8-bit single-channel image");
    if (bit_depth < 8) png_set_expand_gray_1_2_4_to_8(ctx.png);
    if (bit_depth == 16) png_set_strip_16(ctx.png);
    png_read_update_info(ctx.png, ctx.info);
    if (png_get_rowbytes(ctx.png, ctx.info) != w)
        throw IoError(path + ": unexpected png row layout");

    std::vector<std::uint8_t> gray(static_cast<std::size_t>(w) * h);
    for (png_uint_32 y = 0; y < h; ++y)
        png_read_row(ctx.png, gray.data() + static_cast<std::size_t>(y) * w, nullptr);
    png_read_end(ctx.png, nullptr);
    return gray_to_map(gray, static_cast<int>(w), static_cast<int>(h));
}

void write_png_gray(const std::string& path, const std::vector<std::uint8_t>& gray, int w, int h) {
    write_png_channels(path, gray, w, h, 1, PNG_COLOR_TYPE_GRAY);
}

void write_png_rgb(const std::string& path, const std::vector<std::uint8_t>& rgb, int w, int h) {
    write_png_channels(path, rgb, w, h, 3, PNG_COLOR_TYPE_RGB);
}

ProbabilityMap read_map(const std::string& path) {
    const std::string ext = lower_extension(path);
    if (ext == ".pgm" || ext == ".pnm") return read_pgm(path);
    if (ext == ".png") return read_png_gray(path);
    throw IoError(path + ": unsupported image extension \"" + ext + "\" (want .pgm, .pnm or .png)");
}

void write_map(const std::string& path, const ProbabilityMap& map) {
    const std::string ext = lower_extension(path);
    const std::vector<std::uint8_t> gray = map_to_gray(map);
    if (ext == ".pgm" || ext == ".pnm") {
        write_pgm(path, gray, map.width, map.height);
    } else if (ext == ".png") {
        write_png_gray(path, gray, map.width, map.height);
    } else {
        throw IoError(path + ": unsupported image extension \"" + ext +
                      "\" (want .pgm, .pnm or .png)");
    }
}

void write_mask(const std::string& path, const BinaryMask& mask) {
    ProbabilityMap map(mask.width, mask.height);
    for (std::size_t i = 0; i < mask.bits.size(); ++i) map.values[i] = mask.bits[i] ? 1.0 : 0.0;
    write_map(path, map);
}

}  // namespace textcc
