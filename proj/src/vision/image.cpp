#include "vision/image.h"

#include <cstdio>

namespace skypick::vision {

Image Image::filled(int w, int h, uint8_t r, uint8_t g, uint8_t b) {
  Image img;
  img.width = w;
  img.height = h;
  img.data.resize(static_cast<size_t>(w) * h * 3);
  for (size_t i = 0; i < img.data.size(); i += 3) {
    img.data[i] = r;
    img.data[i + 1] = g;
    img.data[i + 2] = b;
  }
  return img;
}

namespace {

// Skips whitespace and '#' comment lines between header tokens.
bool next_token(FILE* f, char* buf, size_t len) {
  size_t n = 0;
  int c = std::fgetc(f);
  while (c != EOF) {
    if (c == '#') {
      while (c != EOF && c != '\n') c = std::fgetc(f);
    } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      if (n > 0) break;
    } else {
      if (n + 1 < len) buf[n++] = static_cast<char>(c);
    }
    if (n + 1 >= len) break;
    c = std::fgetc(f);
  }
  buf[n] = '\0';
  return n > 0;
}

}  // namespace

Result<Image> read_ppm(const std::string& path) {
  FILE* f = std::fopen(path.c_str(), "rb");
  if (!f) return Result<Image>::fail(Err::Io);
  char tok[32];
  Image img;
  bool ok = next_token(f, tok, sizeof(tok)) && std::string_view(tok) == "P6";
  ok = ok && next_token(f, tok, sizeof(tok)) && (img.width = std::atoi(tok)) > 0;
  ok = ok && next_token(f, tok, sizeof(tok)) && (img.height = std::atoi(tok)) > 0;
  ok = ok && next_token(f, tok, sizeof(tok)) && std::atoi(tok) == 255;
  if (!ok) {
    std::fclose(f);
    return Result<Image>::fail(Err::Io);
  }
  const size_t n = static_cast<size_t>(img.width) * img.height * 3;
  img.data.resize(n);
  const size_t got = std::fread(img.data.data(), 1, n, f);
  std::fclose(f);
  if (got != n) return Result<Image>::fail(Err::Io);
  return Result<Image>::ok(std::move(img));
}

Err write_ppm(const Image& img, const std::string& path) {
  FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) return Err::Io;
  std::fprintf(f, "P6\n%d %d\n255\n", img.width, img.height);
  const size_t n = img.data.size();
  const size_t put = std::fwrite(img.data.data(), 1, n, f);
  std::fclose(f);
  return put == n ? Err::None : Err::Io;
}

}  // namespace skypick::vision
