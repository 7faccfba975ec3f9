#ifndef SU11MODES_FSTK_HPP
#define SU11MODES_FSTK_HPP

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>

#include "su11modes/synth.hpp"

namespace su11modes {

// FSTK: self-describing binary frame stack, little-endian.
//   "FSTK" | u16 version | u32 width | u32 height | u32 frame count |
//   f64 pitch (rad/pixel) | f64 center_x | f64 center_y |
//   f32 pixels, frame-major, row-major.
inline constexpr std::uint16_t kFstkVersion = 1;

struct FstkError : std::runtime_error {
    enum class Kind { io, bad_magic, bad_version, bad_header, truncated };
    Kind kind;
    FstkError(Kind k, const std::string& what) : std::runtime_error(what), kind(k) {}
};

void write_stack(const FrameStack& stack, const std::filesystem::path& path);
FrameStack read_stack(const std::filesystem::path& path);

} // namespace su11modes

#endif
