#include "borescan/pgm.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "borescan/error.hpp"

namespace borescan {

namespace {

// Header tokens are separated by whitespace; '#' starts a comment that runs
// to the end of the line.
class HeaderReader {
 public:
  explicit HeaderReader(const std::string& bytes) : bytes_(bytes) {}

  std::string token() {
    skip_space_and_comments();
    std::string out;
    while (pos_ < bytes_.size() && !std::isspace(static_cast<unsigned char>(bytes_[pos_]))) {
      out.push_back(bytes_[pos_++]);
    }
    if (out.empty()) {
      throw Error(Errc::parse, "truncated PGM header");
    }
    return out;
  }

  int number() {
    const std::string t = token();
    for (char c : t) {
      if (!std::isdigit(static_cast<unsigned char>(c))) {
        throw Error(Errc::parse, "bad PGM header field '" + t + "'");
      }
    }
    if (t.size() > 6) {
      throw Error(Errc::parse, "PGM header value too large");
    }
    return std::stoi(t);
  }

  // Exactly one whitespace byte separates maxval from the raster.
  std::size_t raster_start() {
    if (pos_ >= bytes_.size() || !std::isspace(static_cast<unsigned char>(bytes_[pos_]))) {
      throw Error(Errc::parse, "missing separator before PGM raster");
    }
    return pos_ + 1;
  }

 private:
  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      const char c = bytes_[pos_];
      if (c == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  const std::string& bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string encode_pgm(const TileImage& img) {
  std::ostringstream out;
  out << "P5\n" << img.width() << ' ' << img.height() << '\n'
      << img.max_value() << '\n';
  std::string data = out.str();
  const bool wide = img.bit_depth() > 8;
  data.reserve(data.size() + img.pixels().size() * (wide ? 2 : 1));
  for (const auto v : img.pixels()) {
    if (wide) {
      data.push_back(static_cast<char>(v >> 8));
    }
    data.push_back(static_cast<char>(v & 0xff));
  }
  return data;
}

TileImage decode_pgm(const std::string& bytes, double p_x_um, double p_y_um,
                     TileIndex index) {
  HeaderReader header(bytes);
  if (header.token() != "P5") {
    throw Error(Errc::parse, "not a binary PGM (P5)");
  }
  const int width = header.number();
  const int height = header.number();
  const int maxval = header.number();
  if (width <= 0 || height <= 0) {
    throw Error(Errc::parse, "PGM dimensions must be positive");
  }
  if (maxval != 255 && maxval != 65535) {
    throw Error(Errc::parse, "unsupported PGM maxval " + std::to_string(maxval));
  }
  const std::size_t start = header.raster_start();
  const bool wide = maxval > 255;
  const std::size_t need =
      static_cast<std::size_t>(width) * height * (wide ? 2 : 1);
  if (bytes.size() - start < need) {
    throw Error(Errc::parse, "PGM raster is truncated");
  }
  TileImage img(width, height, wide ? 16 : 8, p_x_um, p_y_um, index);
  auto pixels = img.pixels();
  const auto* raw = reinterpret_cast<const unsigned char*>(bytes.data() + start);
  for (std::size_t i = 0; i < pixels.size(); ++i) {
    pixels[i] = wide ? static_cast<std::uint16_t>((raw[2 * i] << 8) | raw[2 * i + 1])
                     : raw[i];
  }
  return img;
}

void write_pgm(const std::filesystem::path& path, const TileImage& img) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error(Errc::io, "cannot write " + path.string());
  }
  const std::string data = encode_pgm(img);
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) {
    throw Error(Errc::io, "failed writing " + path.string());
  }
}

TileImage read_pgm(const std::filesystem::path& path, double p_x_um,
                   double p_y_um, TileIndex index) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(Errc::missing_image, "cannot open image " + path.string());
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return decode_pgm(ss.str(), p_x_um, p_y_um, index);
  } catch (const Error& e) {
    throw Error(Errc::missing_image, path.string() + ": " + e.what());
  }
}

}  // namespace borescan
