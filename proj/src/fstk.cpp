#include "su11modes/fstk.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

namespace su11modes {

namespace {

static_assert(std::endian::native == std::endian::little,
              "FSTK serialization assumes a little-endian host");

constexpr char kMagic[4] = {'F', 'S', 'T', 'K'};
constexpr std::size_t kHeaderBytes = 4 + 2 + 4 + 4 + 4 + 8 + 8 + 8;

template <typename T>
void put(std::ostream& os, T v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <typename T>
T get(std::istream& is) {
    T v{};
    is.read(reinterpret_cast<char*>(&v), sizeof v);
    return v;
}

} // namespace

void write_stack(const FrameStack& stack, const std::filesystem::path& path) {
    if (stack.frames.empty())
        throw FstkError(FstkError::Kind::bad_header, "write_stack: stack holds no frames");
    const Frame& first = stack.frames.front();

    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw FstkError(FstkError::Kind::io, "write_stack: cannot open " + path.string());

    os.write(kMagic, 4);
    put<std::uint16_t>(os, kFstkVersion);
    put<std::uint32_t>(os, static_cast<std::uint32_t>(first.width));
    put<std::uint32_t>(os, static_cast<std::uint32_t>(first.height));
    put<std::uint32_t>(os, static_cast<std::uint32_t>(stack.frames.size()));
    put<double>(os, first.pitch);
    put<double>(os, first.center_x);
    put<double>(os, first.center_y);
    for (const Frame& f : stack.frames)
        os.write(reinterpret_cast<const char*>(f.pixels.data()),
                 static_cast<std::streamsize>(f.pixels.size() * sizeof(float)));
    if (!os) throw FstkError(FstkError::Kind::io, "write_stack: write failed on " + path.string());
}

FrameStack read_stack(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw FstkError(FstkError::Kind::io, "read_stack: cannot open " + path.string());
    is.seekg(0, std::ios::end);
    const std::uint64_t file_size = static_cast<std::uint64_t>(is.tellg());
    is.seekg(0);

    if (file_size < kHeaderBytes)
        throw FstkError(FstkError::Kind::truncated,
                        "read_stack: file shorter than the FSTK header");

    char magic[4];
    is.read(magic, 4);
    if (std::memcmp(magic, kMagic, 4) != 0)
        throw FstkError(FstkError::Kind::bad_magic, "read_stack: not an FSTK file (bad magic)");

    const auto version = get<std::uint16_t>(is);
    if (version != kFstkVersion) {
        std::ostringstream msg;
        msg << "read_stack: unsupported FSTK version " << version << " (supported: "
            << kFstkVersion << ")";
        throw FstkError(FstkError::Kind::bad_version, msg.str());
    }

    const auto width = get<std::uint32_t>(is);
    const auto height = get<std::uint32_t>(is);
    const auto count = get<std::uint32_t>(is);
    const auto pitch = get<double>(is);
    const auto cx = get<double>(is);
    const auto cy = get<double>(is);

    if (width == 0 || height == 0 || count == 0)
        throw FstkError(FstkError::Kind::bad_header, "read_stack: zero dimension in header");
    if (!(pitch > 0.0))
        throw FstkError(FstkError::Kind::bad_header, "read_stack: pixel pitch must be positive");

    const std::uint64_t expected =
        kHeaderBytes + std::uint64_t{count} * width * height * sizeof(float);
    if (file_size != expected) {
        std::ostringstream msg;
        msg << "read_stack: payload mismatch; header declares " << count << " frames of "
            << width << "x" << height << " (" << expected << " bytes total) but the file has "
            << file_size << " bytes";
        throw FstkError(FstkError::Kind::truncated, msg.str());
    }

    FrameStack stack;
    stack.source = path.string();
    stack.frames.reserve(count);
    for (std::uint32_t i = 0; i < count; ++i) {
        Frame f(static_cast<int>(width), static_cast<int>(height), pitch, cx, cy);
        is.read(reinterpret_cast<char*>(f.pixels.data()),
                static_cast<std::streamsize>(f.pixels.size() * sizeof(float)));
        if (!is)
            throw FstkError(FstkError::Kind::truncated, "read_stack: short read in pixel payload");
        stack.frames.push_back(std::move(f));
    }
    return stack;
}

} // namespace su11modes
