/*
 * Copyright (c) 2026 The causaldb Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include <cstring>
#include <functional>

#include "causaldb/error.hpp"
#include "causaldb/table.hpp"

namespace causaldb {

namespace {

// Thrift compact protocol field types.
constexpr std::uint8_t kBoolTrue = 1;
constexpr std::uint8_t kBoolFalse = 2;
constexpr std::uint8_t kI8 = 3;
constexpr std::uint8_t kI16 = 4;
constexpr std::uint8_t kI32 = 5;
constexpr std::uint8_t kI64 = 6;
constexpr std::uint8_t kDouble = 7;
constexpr std::uint8_t kBinary = 8;
constexpr std::uint8_t kList = 9;
constexpr std::uint8_t kSet = 10;
constexpr std::uint8_t kMap = 11;
constexpr std::uint8_t kStruct = 12;

// Parquet enum values.
constexpr std::int32_t kTypeInt64 = 2;
constexpr std::int32_t kTypeDouble = 5;
constexpr std::int32_t kTypeByteArray = 6;
constexpr std::int32_t kRequired = 0;
constexpr std::int32_t kOptional = 1;
constexpr std::int32_t kConvertedUtf8 = 0;
constexpr std::int32_t kConvertedUint64 = 14;
constexpr std::int32_t kEncodingPlain = 0;
constexpr std::int32_t kEncodingRle = 3;
constexpr std::int32_t kCodecUncompressed = 0;
constexpr std::int32_t kPageData = 0;

constexpr std::string_view kMagic = "PAR1";

class CompactWriter {
 public:
  std::string out;

  void begin_struct() { last_.push_back(0); }
  void end_struct() {
    out.push_back(0);
    last_.pop_back();
  }

  void field_i32(std::int16_t id, std::int32_t v) {
    header(id, kI32);
    varint(zigzag(v));
  }
  void field_i64(std::int16_t id, std::int64_t v) {
    header(id, kI64);
    varint(zigzag(v));
  }
  void field_binary(std::int16_t id, std::string_view v) {
    header(id, kBinary);
    binary(v);
  }
  void field_struct(std::int16_t id) {
    header(id, kStruct);
    begin_struct();
  }
  void field_list(std::int16_t id, std::uint8_t elem_type, std::size_t size) {
    header(id, kList);
    list_header(elem_type, size);
  }

  void list_header(std::uint8_t elem_type, std::size_t size) {
    if (size < 15) {
      out.push_back(static_cast<char>((size << 4) | elem_type));
    } else {
      out.push_back(static_cast<char>(0xF0 | elem_type));
      varint(size);
    }
  }
  void elem_i32(std::int32_t v) { varint(zigzag(v)); }
  void binary(std::string_view v) {
    varint(v.size());
    out.append(v);
  }

 private:
  std::vector<std::int16_t> last_;

  static std::uint64_t zigzag(std::int64_t v) {
    return (static_cast<std::uint64_t>(v) << 1) ^ static_cast<std::uint64_t>(v >> 63);
  }
  void varint(std::uint64_t v) {
    while (v >= 0x80) {
      out.push_back(static_cast<char>((v & 0x7F) | 0x80));
      v >>= 7;
    }
    out.push_back(static_cast<char>(v));
  }
  void header(std::int16_t id, std::uint8_t type) {
    const int delta = id - last_.back();
    if (delta > 0 && delta <= 15) {
      out.push_back(static_cast<char>((delta << 4) | type));
    } else {
      out.push_back(static_cast<char>(type));
      varint(zigzag(id));
    }
    last_.back() = id;
  }
};

class CompactReader {
 public:
  CompactReader(std::string_view data, std::size_t pos) : data_(data), pos_(pos) {}

  std::size_t pos() const { return pos_; }

  /// Calls fn(field_id, type) for every field; fn must consume the value
  /// (with the read_* helpers or skip) and return.
  void read_struct(const std::function<void(std::int16_t, std::uint8_t)>& fn) {
    std::int16_t last = 0;
    for (;;) {
      const std::uint8_t byte = u8();
      if (byte == 0) return;
      const std::uint8_t type = byte & 0x0F;
      const int delta = byte >> 4;
      std::int16_t id;
      if (delta != 0) {
        id = static_cast<std::int16_t>(last + delta);
      } else {
        id = static_cast<std::int16_t>(unzigzag(varint()));
      }
      last = id;
      fn(id, type);
    }
  }

  std::int64_t read_int() { return unzigzag(varint()); }
  std::int32_t read_i32() { return static_cast<std::int32_t>(read_int()); }
  std::string read_binary() {
    const std::uint64_t n = varint();
    need(n);
    std::string s(data_.substr(pos_, n));
    pos_ += n;
    return s;
  }
  /// Returns (element type, size).
  std::pair<std::uint8_t, std::size_t> read_list_header() {
    const std::uint8_t byte = u8();
    std::size_t size = byte >> 4;
    if (size == 15) size = varint();
    return {static_cast<std::uint8_t>(byte & 0x0F), size};
  }

  void skip(std::uint8_t type, int depth = 0) {
    if (depth > 64) throw FormatError("parquet metadata nested too deeply");
    switch (type) {
      case kBoolTrue:
      case kBoolFalse: return;  // field value lives in the header
      case kI8: u8(); return;
      case kI16:
      case kI32:
      case kI64: varint(); return;
      case kDouble: need(8); pos_ += 8; return;
      case kBinary: read_binary(); return;
      case kList:
      case kSet: {
        auto [elem, n] = read_list_header();
        for (std::size_t i = 0; i < n; ++i) {
          if (elem == kBoolTrue || elem == kBoolFalse) {
            u8();
          } else {
            skip(elem, depth + 1);
          }
        }
        return;
      }
      case kMap: {
        const std::uint64_t n = varint();
        if (n == 0) return;
        const std::uint8_t kv = u8();
        for (std::uint64_t i = 0; i < n; ++i) {
          skip(kv >> 4, depth + 1);
          skip(kv & 0x0F, depth + 1);
        }
        return;
      }
      case kStruct:
        read_struct([&](std::int16_t, std::uint8_t t) { skip(t, depth + 1); });
        return;
      default: throw FormatError("unknown thrift type " + std::to_string(type));
    }
  }

 private:
  std::string_view data_;
  std::size_t pos_;

  void need(std::uint64_t n) const {
    if (n > data_.size() - pos_) throw FormatError("parquet metadata truncated");
  }
  std::uint8_t u8() {
    need(1);
    return static_cast<std::uint8_t>(data_[pos_++]);
  }
  std::uint64_t varint() {
    std::uint64_t v = 0;
    for (int shift = 0; shift < 64; shift += 7) {
      const std::uint8_t b = u8();
      v |= static_cast<std::uint64_t>(b & 0x7F) << shift;
      if ((b & 0x80) == 0) return v;
    }
    throw FormatError("varint too long");
  }
  static std::int64_t unzigzag(std::uint64_t v) {
    return static_cast<std::int64_t>(v >> 1) ^ -static_cast<std::int64_t>(v & 1);
  }
};

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void put_u64(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

std::uint32_t get_u32(std::string_view data, std::size_t pos) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(static_cast<std::uint8_t>(data[pos + i])) << (8 * i);
  return v;
}

std::uint64_t get_u64(std::string_view data, std::size_t pos) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(static_cast<std::uint8_t>(data[pos + i])) << (8 * i);
  return v;
}

void put_varint(std::string& out, std::uint64_t v) {
  while (v >= 0x80) {
    out.push_back(static_cast<char>((v & 0x7F) | 0x80));
    v >>= 7;
  }
  out.push_back(static_cast<char>(v));
}

/// RLE runs of definition levels at bit width 1, prefixed with their length.
std::string encode_def_levels(const std::vector<bool>& valid) {
  std::string runs;
  std::size_t i = 0;
  while (i < valid.size()) {
    std::size_t j = i;
    while (j < valid.size() && valid[j] == valid[i]) ++j;
    put_varint(runs, static_cast<std::uint64_t>(j - i) << 1);
    runs.push_back(valid[i] ? 1 : 0);
    i = j;
  }
  std::string out;
  put_u32(out, static_cast<std::uint32_t>(runs.size()));
  out += runs;
  return out;
}

std::int32_t physical_type(ColumnType t) {
  switch (t) {
    case ColumnType::u64:
    case ColumnType::i64: return kTypeInt64;
    case ColumnType::f64: return kTypeDouble;
    case ColumnType::string: return kTypeByteArray;
  }
  return kTypeByteArray;
}

std::string encode_values(const Column& c) {
  std::string out;
  const std::size_t n = c.size();
  for (std::size_t r = 0; r < n; ++r) {
    if (c.is_null(r)) continue;
    switch (c.spec.type) {
      case ColumnType::u64: put_u64(out, c.u64[r]); break;
      case ColumnType::i64: put_u64(out, static_cast<std::uint64_t>(c.i64[r])); break;
      case ColumnType::f64: {
        std::uint64_t bits;
        std::memcpy(&bits, &c.f64[r], sizeof bits);
        put_u64(out, bits);
        break;
      }
      case ColumnType::string:
        put_u32(out, static_cast<std::uint32_t>(c.str[r].size()));
        out += c.str[r];
        break;
    }
  }
  return out;
}

struct ChunkInfo {
  std::int64_t data_page_offset = 0;
  std::int64_t total_size = 0;
};

// ---------------------------------------------------------------- reader side

struct SchemaLeaf {
  std::string name;
  std::int32_t type = -1;
  std::int32_t repetition = kRequired;
  std::int32_t converted = -1;
  std::int32_t num_children = 0;
};

struct ChunkMeta {
  std::int32_t type = -1;
  std::int32_t codec = 0;
  std::int64_t num_values = 0;
  std::int64_t data_page_offset = -1;
  std::int64_t dictionary_page_offset = -1;
  std::int64_t total_compressed_size = 0;
};

struct PageInfo {
  std::int32_t type = -1;
  std::int32_t uncompressed = 0;
  std::int32_t compressed = 0;
  std::int32_t num_values = 0;
  std::int32_t encoding = -1;
  std::int32_t def_encoding = -1;
};

SchemaLeaf read_schema_element(CompactReader& r) {
  SchemaLeaf leaf;
  r.read_struct([&](std::int16_t id, std::uint8_t t) {
    switch (id) {
      case 1: leaf.type = r.read_i32(); break;
      case 3: leaf.repetition = r.read_i32(); break;
      case 4: leaf.name = r.read_binary(); break;
      case 5: leaf.num_children = r.read_i32(); break;
      case 6: leaf.converted = r.read_i32(); break;
      default: r.skip(t);
    }
  });
  return leaf;
}

ChunkMeta read_column_meta(CompactReader& r) {
  ChunkMeta m;
  r.read_struct([&](std::int16_t id, std::uint8_t t) {
    switch (id) {
      case 1: m.type = r.read_i32(); break;
      case 4: m.codec = r.read_i32(); break;
      case 5: m.num_values = r.read_int(); break;
      case 7: m.total_compressed_size = r.read_int(); break;
      case 9: m.data_page_offset = r.read_int(); break;
      case 11: m.dictionary_page_offset = r.read_int(); break;
      default: r.skip(t);
    }
  });
  return m;
}

ChunkMeta read_column_chunk(CompactReader& r) {
  ChunkMeta m;
  bool seen = false;
  r.read_struct([&](std::int16_t id, std::uint8_t t) {
    if (id == 3 && t == kStruct) {
      m = read_column_meta(r);
      seen = true;
    } else {
      r.skip(t);
    }
  });
  if (!seen) throw FormatError("parquet column chunk without inline metadata");
  return m;
}

PageInfo read_page_header(CompactReader& r) {
  PageInfo p;
  r.read_struct([&](std::int16_t id, std::uint8_t t) {
    switch (id) {
      case 1: p.type = r.read_i32(); break;
      case 2: p.uncompressed = r.read_i32(); break;
      case 3: p.compressed = r.read_i32(); break;
      case 5:
        if (t != kStruct) {
          r.skip(t);
          break;
        }
        r.read_struct([&](std::int16_t fid, std::uint8_t ft) {
          switch (fid) {
            case 1: p.num_values = r.read_i32(); break;
            case 2: p.encoding = r.read_i32(); break;
            case 3: p.def_encoding = r.read_i32(); break;
            default: r.skip(ft);
          }
        });
        break;
      default: r.skip(t);
    }
  });
  return p;
}

/// Decodes `count` bit-width-1 levels from the RLE/bit-packed hybrid.
std::vector<bool> decode_def_levels(std::string_view data, std::size_t count) {
  std::vector<bool> out;
  out.reserve(count);
  std::size_t pos = 0;
  const auto varint = [&]() {
    std::uint64_t v = 0;
    for (int shift = 0; shift < 64; shift += 7) {
      if (pos >= data.size()) throw FormatError("definition levels truncated");
      const auto b = static_cast<std::uint8_t>(data[pos++]);
      v |= static_cast<std::uint64_t>(b & 0x7F) << shift;
      if ((b & 0x80) == 0) return v;
    }
    throw FormatError("definition level varint too long");
  };
  while (out.size() < count) {
    const std::uint64_t header = varint();
    if ((header & 1) == 0) {
      const std::uint64_t run = header >> 1;
      if (pos >= data.size()) throw FormatError("definition levels truncated");
      const auto value = static_cast<std::uint8_t>(data[pos++]);
      if (value > 1) throw FormatError("definition level out of range");
      for (std::uint64_t i = 0; i < run && out.size() < count; ++i) out.push_back(value == 1);
    } else {
      const std::uint64_t groups = header >> 1;
      for (std::uint64_t g = 0; g < groups; ++g) {
        if (pos >= data.size()) throw FormatError("definition levels truncated");
        const auto byte = static_cast<std::uint8_t>(data[pos++]);
        for (int bit = 0; bit < 8 && out.size() < count; ++bit) out.push_back(((byte >> bit) & 1) != 0);
      }
    }
  }
  return out;
}

ColumnType column_type_of(const SchemaLeaf& leaf) {
  switch (leaf.type) {
    case kTypeInt64: return leaf.converted == kConvertedUint64 ? ColumnType::u64 : ColumnType::i64;
    case kTypeDouble: return ColumnType::f64;
    case kTypeByteArray: return ColumnType::string;
    default: throw FormatError("unsupported parquet physical type " + std::to_string(leaf.type) + " for column " + leaf.name);
  }
}

void decode_values(Column& c, std::string_view data, const std::vector<bool>& present) {
  std::size_t pos = 0;
  for (bool p : present) {
    if (!p) {
      c.push_null();
      continue;
    }
    switch (c.spec.type) {
      case ColumnType::u64:
      case ColumnType::i64:
      case ColumnType::f64: {
        if (data.size() - pos < 8) throw FormatError("column " + c.spec.name + ": values truncated");
        const std::uint64_t bits = get_u64(data, pos);
        pos += 8;
        if (c.spec.type == ColumnType::u64) {
          c.push_u64(bits);
        } else if (c.spec.type == ColumnType::i64) {
          c.push_i64(static_cast<std::int64_t>(bits));
        } else {
          double v;
          std::memcpy(&v, &bits, sizeof v);
          c.push_f64(v);
        }
        break;
      }
      case ColumnType::string: {
        if (data.size() - pos < 4) throw FormatError("column " + c.spec.name + ": values truncated");
        const std::uint32_t n = get_u32(data, pos);
        pos += 4;
        if (data.size() - pos < n) throw FormatError("column " + c.spec.name + ": values truncated");
        c.push_string(std::string(data.substr(pos, n)));
        pos += n;
        break;
      }
    }
  }
}

}  // namespace

std::string write_parquet(const Table& table) {
  const std::size_t rows = table.num_rows();
  std::string out(kMagic);
  std::vector<ChunkInfo> chunks;
  for (const Column& c : table.columns) {
    if (c.size() != rows) throw FormatError("ragged table: column " + c.spec.name);
    std::string body;
    if (c.spec.nullable) body += encode_def_levels(c.valid);
    body += encode_values(c);

    CompactWriter header;
    header.begin_struct();
    header.field_i32(1, kPageData);
    header.field_i32(2, static_cast<std::int32_t>(body.size()));
    header.field_i32(3, static_cast<std::int32_t>(body.size()));
    header.field_struct(5);
    header.field_i32(1, static_cast<std::int32_t>(rows));
    header.field_i32(2, kEncodingPlain);
    header.field_i32(3, kEncodingRle);
    header.field_i32(4, kEncodingRle);
    header.end_struct();
    header.end_struct();

    ChunkInfo info;
    info.data_page_offset = static_cast<std::int64_t>(out.size());
    info.total_size = static_cast<std::int64_t>(header.out.size() + body.size());
    out += header.out;
    out += body;
    chunks.push_back(info);
  }

  CompactWriter meta;
  meta.begin_struct();
  meta.field_i32(1, 1);
  meta.field_list(2, kStruct, table.columns.size() + 1);
  meta.begin_struct();
  meta.field_binary(4, "schema");
  meta.field_i32(5, static_cast<std::int32_t>(table.columns.size()));
  meta.end_struct();
  for (const Column& c : table.columns) {
    meta.begin_struct();
    meta.field_i32(1, physical_type(c.spec.type));
    meta.field_i32(3, c.spec.nullable ? kOptional : kRequired);
    meta.field_binary(4, c.spec.name);
    if (c.spec.type == ColumnType::u64) meta.field_i32(6, kConvertedUint64);
    if (c.spec.type == ColumnType::string) meta.field_i32(6, kConvertedUtf8);
    meta.end_struct();
  }
  meta.field_i64(3, static_cast<std::int64_t>(rows));
  meta.field_list(4, kStruct, 1);
  meta.begin_struct();
  meta.field_list(1, kStruct, table.columns.size());
  std::int64_t total = 0;
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    const Column& c = table.columns[i];
    const ChunkInfo& info = chunks[i];
    total += info.total_size;
    meta.begin_struct();
    meta.field_i64(2, info.data_page_offset);
    meta.field_struct(3);
    meta.field_i32(1, physical_type(c.spec.type));
    if (c.spec.nullable) {
      meta.field_list(2, kI32, 2);
      meta.elem_i32(kEncodingPlain);
      meta.elem_i32(kEncodingRle);
    } else {
      meta.field_list(2, kI32, 1);
      meta.elem_i32(kEncodingPlain);
    }
    meta.field_list(3, kBinary, 1);
    meta.binary(c.spec.name);
    meta.field_i32(4, kCodecUncompressed);
    meta.field_i64(5, static_cast<std::int64_t>(rows));
    meta.field_i64(6, info.total_size);
    meta.field_i64(7, info.total_size);
    meta.field_i64(9, info.data_page_offset);
    meta.end_struct();
    meta.end_struct();
  }
  meta.field_i64(2, total);
  meta.field_i64(3, static_cast<std::int64_t>(rows));
  meta.end_struct();
  meta.field_binary(6, "causaldb");
  meta.end_struct();

  out += meta.out;
  put_u32(out, static_cast<std::uint32_t>(meta.out.size()));
  out += kMagic;
  return out;
}

Table read_parquet(std::string_view bytes) {
  if (bytes.size() < 12 || bytes.substr(0, 4) != kMagic || bytes.substr(bytes.size() - 4) != kMagic) {
    throw FormatError("not a parquet file");
  }
  const std::uint32_t meta_len = get_u32(bytes, bytes.size() - 8);
  if (meta_len > bytes.size() - 12) throw FormatError("parquet footer length out of range");
  const std::size_t meta_start = bytes.size() - 8 - meta_len;
  const std::string_view body = bytes.substr(0, meta_start);

  std::vector<SchemaLeaf> schema;
  std::int64_t num_rows = -1;
  std::vector<std::vector<ChunkMeta>> row_groups;
  CompactReader r(bytes.substr(0, bytes.size() - 8), meta_start);
  r.read_struct([&](std::int16_t id, std::uint8_t t) {
    switch (id) {
      case 2: {
        auto [elem, n] = r.read_list_header();
        if (elem != kStruct) throw FormatError("bad parquet schema list");
        for (std::size_t i = 0; i < n; ++i) schema.push_back(read_schema_element(r));
        break;
      }
      case 3: num_rows = r.read_int(); break;
      case 4: {
        auto [elem, n] = r.read_list_header();
        if (elem != kStruct) throw FormatError("bad parquet row group list");
        for (std::size_t i = 0; i < n; ++i) {
          std::vector<ChunkMeta> columns;
          r.read_struct([&](std::int16_t gid, std::uint8_t gt) {
            if (gid != 1) {
              r.skip(gt);
              return;
            }
            auto [ce, cn] = r.read_list_header();
            if (ce != kStruct) throw FormatError("bad parquet column list");
            for (std::size_t k = 0; k < cn; ++k) columns.push_back(read_column_chunk(r));
          });
          row_groups.push_back(std::move(columns));
        }
        break;
      }
      default: r.skip(t);
    }
  });

  if (schema.empty() || num_rows < 0) throw FormatError("parquet footer missing schema or row count");
  const std::size_t ncols = schema.size() - 1;
  if (static_cast<std::size_t>(schema.front().num_children) != ncols) {
    throw FormatError("nested parquet schemas are not supported");
  }

  std::vector<ColumnSpec> specs;
  for (std::size_t i = 1; i < schema.size(); ++i) {
    const SchemaLeaf& leaf = schema[i];
    if (leaf.num_children != 0 || leaf.repetition > kOptional) {
      throw FormatError("unsupported parquet column " + leaf.name);
    }
    specs.push_back(ColumnSpec{leaf.name, column_type_of(leaf), leaf.repetition == kOptional});
  }
  Table table(specs);

  for (const auto& group : row_groups) {
    if (group.size() != ncols) throw FormatError("row group column count mismatch");
    for (std::size_t i = 0; i < ncols; ++i) {
      const ChunkMeta& m = group[i];
      Column& col = table.columns[i];
      if (m.codec != kCodecUncompressed) throw FormatError("compressed parquet columns are not supported");
      if (m.dictionary_page_offset >= 0) throw FormatError("dictionary-encoded parquet columns are not supported");
      if (m.type != schema[i + 1].type) throw FormatError("column " + col.spec.name + ": type mismatch");
      if (m.data_page_offset < 4 || static_cast<std::size_t>(m.data_page_offset) >= body.size()) {
        throw FormatError("column " + col.spec.name + ": page offset out of range");
      }
      std::size_t pos = static_cast<std::size_t>(m.data_page_offset);
      std::int64_t remaining = m.num_values;
      while (remaining > 0) {
        CompactReader pr(body, pos);
        const PageInfo page = read_page_header(pr);
        pos = pr.pos();
        if (page.compressed < 0 || static_cast<std::size_t>(page.compressed) > body.size() - pos) {
          throw FormatError("column " + col.spec.name + ": page runs past the data section");
        }
        const std::string_view data = body.substr(pos, static_cast<std::size_t>(page.compressed));
        pos += static_cast<std::size_t>(page.compressed);
        if (page.type != kPageData) throw FormatError("column " + col.spec.name + ": unsupported page type");
        if (page.encoding != kEncodingPlain) throw FormatError("column " + col.spec.name + ": unsupported encoding");
        if (page.num_values <= 0 || page.num_values > remaining) {
          throw FormatError("column " + col.spec.name + ": bad page value count");
        }
        const auto count = static_cast<std::size_t>(page.num_values);
        std::vector<bool> present(count, true);
        std::string_view values = data;
        if (col.spec.nullable) {
          if (page.def_encoding != kEncodingRle) throw FormatError("unsupported definition level encoding");
          if (data.size() < 4) throw FormatError("definition levels truncated");
          const std::uint32_t len = get_u32(data, 0);
          if (len > data.size() - 4) throw FormatError("definition levels truncated");
          present = decode_def_levels(data.substr(4, len), count);
          values = data.substr(4 + len);
        }
        decode_values(col, values, present);
        remaining -= page.num_values;
      }
    }
  }
  for (const auto& c : table.columns) {
    if (static_cast<std::int64_t>(c.size()) != num_rows) throw FormatError("parquet row count mismatch");
  }
  return table;
}

}  // namespace causaldb
