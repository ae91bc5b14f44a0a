// SPDX-License-Identifier: Apache-2.0
#include "pcqa/ply_io.hpp"

#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>

#include "pcqa/errors.hpp"

namespace pcqa {

namespace {

enum class PropType { f32, i32, u8 };

std::size_t prop_size(PropType t) { return t == PropType::u8 ? 1 : 4; }

struct Property {
    PropType type;
    std::string name;
    bool is_list = false;
    PropType list_count_type = PropType::u8;  // list payload uses `type`
};

struct Element {
    std::string name;
    std::size_t count = 0;
    std::vector<Property> properties;
};

// Line-oriented reader over a byte buffer that tracks its offset.
struct Cursor {
    const std::vector<std::uint8_t>& bytes;
    std::size_t pos = 0;

    bool eof() const { return pos >= bytes.size(); }

    std::string read_line() {
        std::size_t start = pos;
        while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
        std::size_t end = pos;
        if (pos < bytes.size()) ++pos;  // consume '\n'
        if (end > start && bytes[end - 1] == '\r') --end;
        return std::string(bytes.begin() + start, bytes.begin() + end);
    }
};

PropType parse_prop_type(const std::string& s, std::size_t offset) {
    if (s == "float" || s == "float32") return PropType::f32;
    if (s == "int" || s == "int32") return PropType::i32;
    if (s == "uchar" || s == "uint8") return PropType::u8;
    throw ParseError("unsupported PLY property type '" + s + "'", offset);
}

struct Header {
    PlyEncoding encoding;
    std::vector<Element> elements;
};

Header parse_header(Cursor& cur) {
    if (cur.read_line() != "ply") throw ParseError("missing 'ply' magic", 0);

    Header hdr;
    bool format_seen = false;
    bool end_seen = false;
    while (!cur.eof()) {
        std::size_t line_offset = cur.pos;
        std::string line = cur.read_line();
        std::istringstream iss(line);
        std::string kw;
        iss >> kw;
        if (kw == "comment" || kw == "obj_info" || kw.empty()) continue;
        if (kw == "format") {
            std::string fmt, version;
            iss >> fmt >> version;
            if (fmt == "ascii")
                hdr.encoding = PlyEncoding::ascii;
            else if (fmt == "binary_little_endian")
                hdr.encoding = PlyEncoding::binary_le;
            else
                throw ParseError("unsupported PLY format '" + fmt + "'", line_offset);
            if (version != "1.0")
                throw ParseError("unsupported PLY version '" + version + "'", line_offset);
            format_seen = true;
        } else if (kw == "element") {
            Element el;
            if (!(iss >> el.name >> el.count))
                throw ParseError("malformed element declaration", line_offset);
            hdr.elements.push_back(el);
        } else if (kw == "property") {
            if (hdr.elements.empty())
                throw ParseError("property before element declaration", line_offset);
            std::string type_word;
            iss >> type_word;
            Property prop;
            if (type_word == "list") {
                std::string count_t, item_t;
                iss >> count_t >> item_t;
                prop.is_list = true;
                prop.list_count_type = parse_prop_type(count_t, line_offset);
                prop.type = parse_prop_type(item_t, line_offset);
            } else {
                prop.type = parse_prop_type(type_word, line_offset);
            }
            if (!(iss >> prop.name))
                throw ParseError("property missing name", line_offset);
            hdr.elements.back().properties.push_back(prop);
        } else if (kw == "end_header") {
            end_seen = true;
            break;
        } else {
            throw ParseError("unknown header keyword '" + kw + "'", line_offset);
        }
    }
    if (!format_seen) throw ParseError("missing 'format' line", cur.pos);
    if (!end_seen) throw ParseError("missing 'end_header'", cur.pos);
    return hdr;
}

double read_binary_scalar(Cursor& cur, PropType type) {
    std::size_t n = prop_size(type);
    if (cur.pos + n > cur.bytes.size())
        throw ParseError("truncated binary body", cur.pos);
    const std::uint8_t* p = cur.bytes.data() + cur.pos;
    cur.pos += n;
    switch (type) {
        case PropType::u8:
            return double(*p);
        case PropType::i32: {
            std::int32_t v;
            std::memcpy(&v, p, 4);
            return double(v);
        }
        case PropType::f32: {
            float v;
            std::memcpy(&v, p, 4);
            return double(v);
        }
    }
    return 0.0;
}

void append_le(std::vector<std::uint8_t>& out, const void* src, std::size_t n) {
    const auto* p = static_cast<const std::uint8_t*>(src);
    out.insert(out.end(), p, p + n);
}

}  // namespace

PointCloud parse_ply(const std::vector<std::uint8_t>& bytes) {
    Cursor cur{bytes};
    Header hdr = parse_header(cur);

    PointCloud cloud;
    for (const Element& el : hdr.elements) {
        if (el.name != "vertex") {
            std::cerr << "ply: ignoring element '" << el.name << "' (" << el.count
                      << " entries)\n";
            // Skip the element's body so later elements stay readable.
            for (std::size_t i = 0; i < el.count; ++i) {
                if (hdr.encoding == PlyEncoding::ascii) {
                    if (cur.eof()) throw ParseError("truncated body", cur.pos);
                    cur.read_line();
                } else {
                    for (const Property& prop : el.properties) {
                        if (prop.is_list) {
                            std::size_t n =
                                std::size_t(read_binary_scalar(cur, prop.list_count_type));
                            for (std::size_t k = 0; k < n; ++k)
                                read_binary_scalar(cur, prop.type);
                        } else {
                            read_binary_scalar(cur, prop.type);
                        }
                    }
                }
            }
            continue;
        }

        int idx_pos[3] = {-1, -1, -1};
        int idx_col[3] = {-1, -1, -1};
        int idx_nrm[3] = {-1, -1, -1};
        const char* pos_names[3] = {"x", "y", "z"};
        const char* col_names[3] = {"red", "green", "blue"};
        const char* nrm_names[3] = {"nx", "ny", "nz"};
        for (int i = 0; i < int(el.properties.size()); ++i) {
            const Property& prop = el.properties[i];
            if (prop.is_list)
                throw ParseError("list property '" + prop.name + "' on vertex element",
                                 cur.pos);
            for (int a = 0; a < 3; ++a) {
                if (prop.name == pos_names[a]) idx_pos[a] = i;
                if (prop.name == col_names[a]) idx_col[a] = i;
                if (prop.name == nrm_names[a]) idx_nrm[a] = i;
            }
        }
        for (int a = 0; a < 3; ++a)
            if (idx_pos[a] < 0)
                throw ParseError(std::string("vertex element missing property '") +
                                     pos_names[a] + "'",
                                 cur.pos);
        bool has_col = idx_col[0] >= 0 && idx_col[1] >= 0 && idx_col[2] >= 0;
        bool has_nrm = idx_nrm[0] >= 0 && idx_nrm[1] >= 0 && idx_nrm[2] >= 0;

        cloud.positions.reserve(el.count);
        if (has_col) cloud.colors.reserve(el.count);
        if (has_nrm) cloud.normals.reserve(el.count);

        std::vector<double> row(el.properties.size());
        for (std::size_t v = 0; v < el.count; ++v) {
            if (hdr.encoding == PlyEncoding::ascii) {
                if (cur.eof())
                    throw ParseError("truncated body: expected " +
                                         std::to_string(el.count) + " vertices, got " +
                                         std::to_string(v),
                                     cur.pos);
                std::size_t line_offset = cur.pos;
                std::istringstream iss(cur.read_line());
                for (std::size_t i = 0; i < row.size(); ++i) {
                    if (!(iss >> row[i]))
                        throw ParseError("malformed vertex row", line_offset);
                    // honor the declared precision so text round-trips exactly
                    if (el.properties[i].type == PropType::f32)
                        row[i] = double(float(row[i]));
                }
            } else {
                if (cur.pos >= bytes.size())
                    throw ParseError("truncated body: expected " +
                                         std::to_string(el.count) + " vertices, got " +
                                         std::to_string(v),
                                     cur.pos);
                for (std::size_t i = 0; i < row.size(); ++i)
                    row[i] = read_binary_scalar(cur, el.properties[i].type);
            }
            cloud.positions.emplace_back(row[idx_pos[0]], row[idx_pos[1]], row[idx_pos[2]]);
            if (has_col)
                cloud.colors.push_back({std::uint8_t(row[idx_col[0]]),
                                        std::uint8_t(row[idx_col[1]]),
                                        std::uint8_t(row[idx_col[2]])});
            if (has_nrm)
                cloud.normals.emplace_back(row[idx_nrm[0]], row[idx_nrm[1]],
                                           row[idx_nrm[2]]);
        }
    }
    return cloud;
}

std::vector<std::uint8_t> write_ply(const PointCloud& cloud, PlyEncoding encoding) {
    cloud.validate();

    std::ostringstream hdr;
    hdr << "ply\n";
    hdr << "format "
        << (encoding == PlyEncoding::ascii ? "ascii" : "binary_little_endian")
        << " 1.0\n";
    hdr << "element vertex " << cloud.size() << "\n";
    hdr << "property float x\nproperty float y\nproperty float z\n";
    if (cloud.has_normals())
        hdr << "property float nx\nproperty float ny\nproperty float nz\n";
    if (cloud.has_colors())
        hdr << "property uchar red\nproperty uchar green\nproperty uchar blue\n";
    hdr << "end_header\n";

    std::vector<std::uint8_t> out;
    std::string h = hdr.str();
    out.insert(out.end(), h.begin(), h.end());

    if (encoding == PlyEncoding::ascii) {
        std::ostringstream body;
        body.precision(9);  // float round-trips through text
        for (std::size_t i = 0; i < cloud.size(); ++i) {
            const Vec3& p = cloud.positions[i];
            body << float(p.x) << ' ' << float(p.y) << ' ' << float(p.z);
            if (cloud.has_normals()) {
                const Vec3& n = cloud.normals[i];
                body << ' ' << float(n.x) << ' ' << float(n.y) << ' ' << float(n.z);
            }
            if (cloud.has_colors()) {
                const Color& c = cloud.colors[i];
                body << ' ' << int(c[0]) << ' ' << int(c[1]) << ' ' << int(c[2]);
            }
            body << '\n';
        }
        std::string b = body.str();
        out.insert(out.end(), b.begin(), b.end());
    } else {
        for (std::size_t i = 0; i < cloud.size(); ++i) {
            float xyz[3] = {float(cloud.positions[i].x), float(cloud.positions[i].y),
                            float(cloud.positions[i].z)};
            append_le(out, xyz, sizeof(xyz));
            if (cloud.has_normals()) {
                float n[3] = {float(cloud.normals[i].x), float(cloud.normals[i].y),
                              float(cloud.normals[i].z)};
                append_le(out, n, sizeof(n));
            }
            if (cloud.has_colors()) append_le(out, cloud.colors[i].data(), 3);
        }
    }
    return out;
}

PointCloud load_ply(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open '" + path + "'");
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    return parse_ply(bytes);
}

void save_ply(const PointCloud& cloud, const std::string& path, PlyEncoding encoding) {
    std::vector<std::uint8_t> bytes = write_ply(cloud, encoding);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write '" + path + "'");
    out.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
}

}  // namespace pcqa
