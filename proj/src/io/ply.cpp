// Copyright 2026 The artic Authors
// SPDX-License-Identifier: Apache-2.0

#include "artic/io/ply.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <cmath>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

#include "artic/error.hpp"

namespace artic {
namespace {

constexpr std::string_view kModule = "io";

std::size_t type_size(PlyType t) {
  switch (t) {
    case PlyType::kInt8: case PlyType::kUint8: return 1;
    case PlyType::kInt16: case PlyType::kUint16: return 2;
    case PlyType::kInt32: case PlyType::kUint32: case PlyType::kFloat32: return 4;
    case PlyType::kFloat64: return 8;
  }
  return 0;
}

bool parse_type(std::string_view s, PlyType& out) {
  static const std::pair<std::string_view, PlyType> kNames[] = {
      {"char", PlyType::kInt8},     {"int8", PlyType::kInt8},       {"uchar", PlyType::kUint8},
      {"uint8", PlyType::kUint8},   {"short", PlyType::kInt16},     {"int16", PlyType::kInt16},
      {"ushort", PlyType::kUint16}, {"uint16", PlyType::kUint16},   {"int", PlyType::kInt32},
      {"int32", PlyType::kInt32},   {"uint", PlyType::kUint32},     {"uint32", PlyType::kUint32},
      {"float", PlyType::kFloat32}, {"float32", PlyType::kFloat32}, {"double", PlyType::kFloat64},
      {"float64", PlyType::kFloat64}};
  for (const auto& [name, type] : kNames) {
    if (name == s) {
      out = type;
      return true;
    }
  }
  return false;
}

std::string_view type_name(PlyType t) {
  switch (t) {
    case PlyType::kInt8: return "char";
    case PlyType::kUint8: return "uchar";
    case PlyType::kInt16: return "short";
    case PlyType::kUint16: return "ushort";
    case PlyType::kInt32: return "int";
    case PlyType::kUint32: return "uint";
    case PlyType::kFloat32: return "float";
    case PlyType::kFloat64: return "double";
  }
  return "double";
}

bool is_integral(PlyType t) { return t != PlyType::kFloat32 && t != PlyType::kFloat64; }

[[noreturn]] void parse_error(const std::filesystem::path& path, const std::string& where,
                              const std::string& what) {
  throw Error(ErrorCode::kParseError, kModule, path.string() + ": " + where + ": " + what);
}

template <typename T>
T load(const char* p, bool swap) {
  std::array<char, sizeof(T)> raw;
  std::memcpy(raw.data(), p, sizeof(T));
  if (swap) std::reverse(raw.begin(), raw.end());
  T v;
  std::memcpy(&v, raw.data(), sizeof(T));
  return v;
}

double decode(PlyType t, const char* p, bool swap) {
  switch (t) {
    case PlyType::kInt8: return load<std::int8_t>(p, swap);
    case PlyType::kUint8: return load<std::uint8_t>(p, swap);
    case PlyType::kInt16: return load<std::int16_t>(p, swap);
    case PlyType::kUint16: return load<std::uint16_t>(p, swap);
    case PlyType::kInt32: return load<std::int32_t>(p, swap);
    case PlyType::kUint32: return load<std::uint32_t>(p, swap);
    case PlyType::kFloat32: return load<float>(p, swap);
    case PlyType::kFloat64: return load<double>(p, swap);
  }
  return 0.0;
}

template <typename T>
void store(std::string& out, T v, bool swap) {
  std::array<char, sizeof(T)> raw;
  std::memcpy(raw.data(), &v, sizeof(T));
  if (swap) std::reverse(raw.begin(), raw.end());
  out.append(raw.data(), raw.size());
}

void encode(std::string& out, PlyType t, double v, bool swap) {
  switch (t) {
    case PlyType::kInt8: store(out, static_cast<std::int8_t>(v), swap); break;
    case PlyType::kUint8: store(out, static_cast<std::uint8_t>(v), swap); break;
    case PlyType::kInt16: store(out, static_cast<std::int16_t>(v), swap); break;
    case PlyType::kUint16: store(out, static_cast<std::uint16_t>(v), swap); break;
    case PlyType::kInt32: store(out, static_cast<std::int32_t>(v), swap); break;
    case PlyType::kUint32: store(out, static_cast<std::uint32_t>(v), swap); break;
    case PlyType::kFloat32: store(out, static_cast<float>(v), swap); break;
    case PlyType::kFloat64: store(out, v, swap); break;
  }
}

bool host_is_little() { return std::endian::native == std::endian::little; }

// Whitespace tokenizer over the ascii body that remembers line numbers.
class Tokens {
 public:
  Tokens(std::string_view body, std::size_t first_line) : body_(body), line_(first_line) {}

  bool next(std::string_view& tok) {
    while (pos_ < body_.size() && std::isspace(static_cast<unsigned char>(body_[pos_]))) {
      if (body_[pos_] == '\n') ++line_;
      ++pos_;
    }
    if (pos_ >= body_.size()) return false;
    const std::size_t start = pos_;
    while (pos_ < body_.size() && !std::isspace(static_cast<unsigned char>(body_[pos_]))) ++pos_;
    tok = body_.substr(start, pos_ - start);
    return true;
  }
  std::size_t line() const { return line_; }

 private:
  std::string_view body_;
  std::size_t pos_ = 0;
  std::size_t line_;
};

}  // namespace

const std::vector<double>* PlyElement::column(const std::string& prop) const {
  for (std::size_t i = 0; i < properties.size(); ++i) {
    if (properties[i].name == prop && !properties[i].is_list) return &columns[i];
  }
  return nullptr;
}

const PlyElement* PlyData::element(const std::string& elem) const {
  for (const auto& e : elements) {
    if (e.name == elem) return &e;
  }
  return nullptr;
}

PlyData read_ply_data(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kMissingFile, kModule, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();

  PlyData data;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  bool have_format = false;
  bool ended = false;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string::npos) eol = text.size();
    std::string line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string where = "line " + std::to_string(line_no);
    std::istringstream ls(line);
    std::string word;
    ls >> word;
    if (line_no == 1) {
      if (word != "ply") parse_error(path, where, "missing 'ply' magic");
      continue;
    }
    if (word.empty() || word == "comment" || word == "obj_info") continue;
    if (word == "format") {
      std::string fmt, version;
      ls >> fmt >> version;
      if (fmt == "ascii") data.format = PlyFormat::kAscii;
      else if (fmt == "binary_little_endian") data.format = PlyFormat::kBinaryLittleEndian;
      else if (fmt == "binary_big_endian") data.format = PlyFormat::kBinaryBigEndian;
      else parse_error(path, where, "unknown format '" + fmt + "'");
      have_format = true;
    } else if (word == "element") {
      PlyElement e;
      long long count = -1;
      ls >> e.name >> count;
      if (e.name.empty() || count < 0) parse_error(path, where, "malformed element line");
      e.count = static_cast<std::size_t>(count);
      data.elements.push_back(std::move(e));
    } else if (word == "property") {
      if (data.elements.empty()) parse_error(path, where, "property before any element");
      PlyProperty p;
      std::string t;
      ls >> t;
      if (t == "list") {
        std::string ct, it;
        ls >> ct >> it >> p.name;
        p.is_list = true;
        if (!parse_type(ct, p.count_type) || !parse_type(it, p.type) || !is_integral(p.count_type)) {
          parse_error(path, where, "bad list property types");
        }
      } else {
        ls >> p.name;
        if (!parse_type(t, p.type)) parse_error(path, where, "unknown property type '" + t + "'");
      }
      if (p.name.empty()) parse_error(path, where, "property without a name");
      data.elements.back().properties.push_back(p);
    } else if (word == "end_header") {
      ended = true;
      break;
    } else {
      parse_error(path, where, "unexpected header keyword '" + word + "'");
    }
  }
  if (line_no == 0) parse_error(path, "line 1", "empty file");
  if (!ended) parse_error(path, "line " + std::to_string(line_no), "missing end_header");
  if (!have_format) parse_error(path, "header", "missing format line");

  for (auto& e : data.elements) {
    e.columns.resize(e.properties.size());
    for (std::size_t i = 0; i < e.properties.size(); ++i) {
      if (!e.properties[i].is_list) e.columns[i].reserve(e.count);
    }
  }

  if (data.format == PlyFormat::kAscii) {
    Tokens tokens(std::string_view(text).substr(std::min(pos, text.size())), line_no + 1);
    std::string_view tok;
    auto number = [&](const PlyElement& e) {
      if (!tokens.next(tok)) {
        parse_error(path, "line " + std::to_string(tokens.line()),
                    "unexpected end of data in element '" + e.name + "'");
      }
      if (tok.size() > 1 && tok.front() == '+') tok.remove_prefix(1);
      double v = 0.0;
      const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (res.ec != std::errc() || res.ptr != tok.data() + tok.size()) {
        parse_error(path, "line " + std::to_string(tokens.line()),
                    "bad number '" + std::string(tok) + "'");
      }
      return v;
    };
    for (auto& e : data.elements) {
      for (std::size_t r = 0; r < e.count; ++r) {
        for (std::size_t i = 0; i < e.properties.size(); ++i) {
          const PlyProperty& p = e.properties[i];
          if (p.is_list) {
            const double n = number(e);
            if (n < 0 || n != std::floor(n)) {
              parse_error(path, "line " + std::to_string(tokens.line()), "bad list length");
            }
            for (std::size_t j = 0; j < static_cast<std::size_t>(n); ++j) number(e);
          } else {
            e.columns[i].push_back(number(e));
          }
        }
      }
    }
    return data;
  }

  const bool file_little = data.format == PlyFormat::kBinaryLittleEndian;
  const bool swap = file_little != host_is_little();
  std::size_t off = std::min(pos, text.size());
  auto need = [&](std::size_t bytes, const PlyElement& e) {
    if (off + bytes > text.size()) {
      parse_error(path, "byte offset " + std::to_string(off),
                  "truncated body in element '" + e.name + "'");
    }
  };
  for (auto& e : data.elements) {
    for (std::size_t r = 0; r < e.count; ++r) {
      for (std::size_t i = 0; i < e.properties.size(); ++i) {
        const PlyProperty& p = e.properties[i];
        if (p.is_list) {
          need(type_size(p.count_type), e);
          const double n = decode(p.count_type, text.data() + off, swap);
          off += type_size(p.count_type);
          if (n < 0) parse_error(path, "byte offset " + std::to_string(off), "negative list length");
          const std::size_t bytes = static_cast<std::size_t>(n) * type_size(p.type);
          need(bytes, e);
          off += bytes;
        } else {
          need(type_size(p.type), e);
          e.columns[i].push_back(decode(p.type, text.data() + off, swap));
          off += type_size(p.type);
        }
      }
    }
  }
  return data;
}

void write_ply_data(const PlyData& data, const std::filesystem::path& path) {
  std::string out = "ply\nformat ";
  switch (data.format) {
    case PlyFormat::kAscii: out += "ascii 1.0\n"; break;
    case PlyFormat::kBinaryLittleEndian: out += "binary_little_endian 1.0\n"; break;
    case PlyFormat::kBinaryBigEndian: out += "binary_big_endian 1.0\n"; break;
  }
  for (const auto& e : data.elements) {
    out += "element " + e.name + " " + std::to_string(e.count) + "\n";
    for (std::size_t i = 0; i < e.properties.size(); ++i) {
      const PlyProperty& p = e.properties[i];
      if (p.is_list || e.columns.size() != e.properties.size() || e.columns[i].size() != e.count) {
        throw Error(ErrorCode::kIoError, kModule,
                    "element '" + e.name + "' property '" + p.name + "' cannot be written");
      }
      out += "property " + std::string(type_name(p.type)) + " " + p.name + "\n";
    }
  }
  out += "end_header\n";

  const bool swap = (data.format == PlyFormat::kBinaryLittleEndian) != host_is_little();
  char buf[64];
  for (const auto& e : data.elements) {
    for (std::size_t r = 0; r < e.count; ++r) {
      for (std::size_t i = 0; i < e.properties.size(); ++i) {
        const double v = e.columns[i][r];
        const PlyType t = e.properties[i].type;
        if (data.format != PlyFormat::kAscii) {
          encode(out, t, v, swap);
          continue;
        }
        if (i > 0) out += ' ';
        const auto res = is_integral(t)
                             ? std::to_chars(buf, buf + sizeof buf, static_cast<long long>(v))
                             : std::to_chars(buf, buf + sizeof buf, v);
        out.append(buf, res.ptr);
      }
      if (data.format == PlyFormat::kAscii) out += '\n';
    }
  }

  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorCode::kIoError, kModule, "cannot write " + path.string());
  f.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!f) throw Error(ErrorCode::kIoError, kModule, "write failed for " + path.string());
}

PointCloud read_ply(const std::filesystem::path& path) {
  const PlyData data = read_ply_data(path);
  const PlyElement* v = data.element("vertex");
  if (v == nullptr) parse_error(path, "header", "no vertex element");
  const auto* x = v->column("x");
  const auto* y = v->column("y");
  const auto* z = v->column("z");
  if (!x || !y || !z) parse_error(path, "header", "vertex element lacks x, y or z");
  PointCloud cloud;
  cloud.points.reserve(v->count);
  for (std::size_t i = 0; i < v->count; ++i) cloud.points.emplace_back((*x)[i], (*y)[i], (*z)[i]);
  return cloud;
}

void write_ply(const PointCloud& cloud, const std::filesystem::path& path, PlyFormat format) {
  PlyData data;
  data.format = format;
  PlyElement v;
  v.name = "vertex";
  v.count = cloud.size();
  v.properties = {{"x"}, {"y"}, {"z"}};
  v.columns.resize(3);
  for (const Point3& p : cloud) {
    for (int a = 0; a < 3; ++a) v.columns[a].push_back(p[a]);
  }
  data.elements.push_back(std::move(v));
  write_ply_data(data, path);
}

}  // namespace artic
