#include "tfnca/pnm.hpp"

#include <bit>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string_view>

namespace tfnca {

namespace {

constexpr long long kMaxPixels = 1LL << 28;

bool pnm_space(char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' || c == '\f';
}

// Incremental view over the payload. Header tokens may be separated by any
// whitespace and by '#' comments running to end of line.
struct Reader {
    std::string_view data;
    std::size_t pos = 0;

    bool eof() const { return pos >= data.size(); }

    void skip_space_and_comments() {
        while (!eof()) {
            const char c = data[pos];
            if (pnm_space(c)) {
                ++pos;
            } else if (c == '#') {
                while (!eof() && data[pos] != '\n')
                    ++pos;
            } else {
                break;
            }
        }
    }

    std::string_view token(const char* what) {
        skip_space_and_comments();
        if (eof())
            throw TruncationError(std::string("input ends before ") + what);
        const std::size_t start = pos;
        while (!eof() && !pnm_space(data[pos]) && data[pos] != '#')
            ++pos;
        return data.substr(start, pos - start);
    }

    std::uint64_t number(const char* what, std::uint64_t max_value) {
        const std::string_view t = token(what);
        std::uint64_t value = 0;
        auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
        if (ec != std::errc{} || ptr != t.data() + t.size())
            throw FormatError(std::string("bad ") + what + " '" + std::string(t) + "'");
        if (value > max_value)
            throw FormatError(std::string(what) + " " + std::to_string(value) +
                              " exceeds " + std::to_string(max_value));
        return value;
    }

    // The single whitespace byte separating a binary header from its raster.
    void binary_gap() {
        if (eof() || !pnm_space(data[pos]))
            throw FormatError("missing whitespace before binary raster");
        ++pos;
    }

    std::string_view raw(std::size_t n, const char* what) {
        if (data.size() - pos < n)
            throw TruncationError(std::string("input ends before ") + what);
        const std::string_view r = data.substr(pos, n);
        pos += n;
        return r;
    }
};

std::uint8_t rescale(std::uint64_t v, std::uint64_t maxval) {
    if (maxval == 255)
        return static_cast<std::uint8_t>(v);
    // round(v * 255 / maxval), half away from zero, in exact integers
    return static_cast<std::uint8_t>((510 * v + maxval) / (2 * maxval));
}

BinaryGrid read_p1(Reader& r, int h, int w) {
    BinaryGrid grid(h, w);
    for (int i = 0; i < h; ++i)
        for (int j = 0; j < w; ++j) {
            r.skip_space_and_comments();
            if (r.eof())
                throw TruncationError("bitmap data ends early");
            const char c = r.data[r.pos++];
            if (c == '1')
                grid.set(i, j, true);
            else if (c != '0')
                throw FormatError(std::string("bad bitmap digit '") + c + "'");
        }
    return grid;
}

GrayImage read_p2(Reader& r, int h, int w, std::uint64_t maxval) {
    GrayImage img(h, w);
    for (int i = 0; i < h; ++i)
        for (int j = 0; j < w; ++j)
            img.at(i, j) = rescale(r.number("graymap sample", maxval), maxval);
    return img;
}

BinaryGrid read_p4(Reader& r, int h, int w) {
    r.binary_gap();
    const std::size_t row_bytes = (static_cast<std::size_t>(w) + 7) / 8;
    BinaryGrid grid(h, w);
    for (int i = 0; i < h; ++i) {
        const std::string_view row = r.raw(row_bytes, "bitmap raster");
        for (int j = 0; j < w; ++j) {
            const auto byte = static_cast<unsigned char>(row[j >> 3]);
            if ((byte >> (7 - (j & 7))) & 1u)  // MSB first within each byte
                grid.set(i, j, true);
        }
    }
    return grid;
}

GrayImage read_p5(Reader& r, int h, int w, std::uint64_t maxval) {
    r.binary_gap();
    const int sample_bytes = maxval > 255 ? 2 : 1;
    const std::string_view raster =
        r.raw(static_cast<std::size_t>(h) * w * sample_bytes, "graymap raster");
    GrayImage img(h, w);
    std::size_t k = 0;
    for (int i = 0; i < h; ++i)
        for (int j = 0; j < w; ++j) {
            std::uint64_t v;
            if (sample_bytes == 1) {
                v = static_cast<unsigned char>(raster[k++]);
            } else {  // big-endian
                const std::uint64_t hi = static_cast<unsigned char>(raster[k++]);
                const std::uint64_t lo = static_cast<unsigned char>(raster[k++]);
                v = hi << 8 | lo;
            }
            if (v > maxval)
                throw FormatError("graymap sample " + std::to_string(v) +
                                  " exceeds maxval " + std::to_string(maxval));
            img.at(i, j) = rescale(v, maxval);
        }
    return img;
}

}  // namespace

PnmImage read_pnm(const std::string& bytes) {
    Reader r{bytes, 0};
    r.skip_space_and_comments();
    if (r.eof())
        throw FormatError("empty input");
    const std::string_view magic = r.token("magic number");
    if (magic == "P3" || magic == "P6")
        throw FormatError("color PNM is not supported; use PBM or PGM");
    if (magic != "P1" && magic != "P2" && magic != "P4" && magic != "P5")
        throw FormatError("unrecognized magic number '" + std::string(magic) + "'");

    const auto w64 = r.number("width", 1u << 28);
    const auto h64 = r.number("height", 1u << 28);
    if (w64 == 0 || h64 == 0)
        throw FormatError("zero image dimension");
    if (static_cast<long long>(w64) * static_cast<long long>(h64) > kMaxPixels)
        throw FormatError("image dimensions exceed the supported size");
    const int w = static_cast<int>(w64);
    const int h = static_cast<int>(h64);

    if (magic == "P1")
        return read_p1(r, h, w);
    if (magic == "P4")
        return read_p4(r, h, w);

    const std::uint64_t maxval = r.number("maxval", 65535);
    if (maxval == 0)
        throw FormatError("maxval must be positive");
    if (magic == "P2")
        return read_p2(r, h, w, maxval);
    return read_p5(r, h, w, maxval);
}

PnmImage read_pnm_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open '" + path + "' for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad())
        throw IoError("failed reading '" + path + "'");
    return read_pnm(buf.str());
}

std::string write_pnm(const BinaryGrid& grid, PnmFormat format) {
    if (format == PnmFormat::P2 || format == PnmFormat::P5)
        throw UsageError("a binary grid serializes to PBM (P1/P4), not PGM");
    std::string out;
    const int h = grid.height(), w = grid.width();
    if (format == PnmFormat::P1) {
        out = "P1\n" + std::to_string(w) + " " + std::to_string(h) + "\n";
        for (int i = 0; i < h; ++i) {
            for (int j = 0; j < w; ++j) {
                if (j)
                    out += ' ';
                out += grid.at(i, j) ? '1' : '0';
            }
            out += '\n';
        }
        return out;
    }
    out = "P4\n" + std::to_string(w) + " " + std::to_string(h) + "\n";
    const int row_bytes = (w + 7) / 8;
    for (int i = 0; i < h; ++i)
        for (int b = 0; b < row_bytes; ++b) {
            unsigned char byte = 0;
            for (int k = 0; k < 8; ++k) {
                const int j = b * 8 + k;
                if (j < w && grid.at(i, j))
                    byte |= static_cast<unsigned char>(1u << (7 - k));
            }
            out += static_cast<char>(byte);
        }
    return out;
}

std::string write_pnm(const GrayImage& img, PnmFormat format) {
    if (format == PnmFormat::P1 || format == PnmFormat::P4)
        throw UsageError("a grayscale image serializes to PGM (P2/P5); binarize first");
    const int h = img.height(), w = img.width();
    std::string out = (format == PnmFormat::P2 ? "P2\n" : "P5\n") +
                      std::to_string(w) + " " + std::to_string(h) + "\n255\n";
    if (format == PnmFormat::P2) {
        for (int i = 0; i < h; ++i) {
            for (int j = 0; j < w; ++j) {
                if (j)
                    out += ' ';
                out += std::to_string(img.at(i, j));
            }
            out += '\n';
        }
    } else {
        out.append(reinterpret_cast<const char*>(img.pixels().data()),
                   img.pixels().size());
    }
    return out;
}

std::string write_pnm(const PnmImage& img, PnmFormat format) {
    if (const auto* grid = std::get_if<BinaryGrid>(&img))
        return write_pnm(*grid, format);
    return write_pnm(std::get<GrayImage>(img), format);
}

void write_pnm_file(const PnmImage& img, PnmFormat format, const std::string& path) {
    const std::string bytes = write_pnm(img, format);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot open '" + path + "' for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out)
        throw IoError("failed writing '" + path + "'");
}

}  // namespace tfnca
