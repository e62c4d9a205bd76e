#include "deltarad/nifti.hpp"

#include <cstring>
#include <fstream>

namespace deltarad::nifti {

namespace {

constexpr std::size_t kHeaderSize = 348;
constexpr std::size_t kVoxOffset = 352;

// little-endian scalar reads; this library targets little-endian hosts only
template <class T>
T get(const std::vector<std::uint8_t>& b, std::size_t off) {
    T v;
    std::memcpy(&v, b.data() + off, sizeof(T));
    return v;
}

template <class T>
void put(std::vector<std::uint8_t>& b, std::size_t off, T v) {
    std::memcpy(b.data() + off, &v, sizeof(T));
}

std::size_t element_size(std::int16_t datatype) {
    switch (datatype) {
        case 2: return 1;   // uint8
        case 4: return 2;   // int16
        case 8: return 4;   // int32
        case 16: return 4;  // float32
        case 64: return 8;  // float64
        default: return 0;
    }
}

}  // namespace

VolumeGrid parse(const std::vector<std::uint8_t>& bytes) {
    if (bytes.size() < kVoxOffset)
        throw DataError("TruncatedData", "file shorter than the 352-byte single-file minimum");

    const auto sizeof_hdr = get<std::int32_t>(bytes, 0);
    if (sizeof_hdr != 348) {
        if (sizeof_hdr == 1543569408)  // 348 byte-swapped
            throw DataError("BadMagic", "big-endian NIfTI-1 is not supported");
        throw DataError("BadMagic", "sizeof_hdr = " + std::to_string(sizeof_hdr) + ", expected 348");
    }

    char magic[4];
    std::memcpy(magic, bytes.data() + 344, 4);
    const bool n_plus_1 = std::memcmp(magic, "n+1", 4) == 0;
    const bool ni1 = std::memcmp(magic, "ni1", 4) == 0;
    if (!n_plus_1 && !ni1)
        throw DataError("BadMagic", "magic field is neither \"n+1\\0\" nor \"ni1\\0\"");

    const auto ndim = get<std::int16_t>(bytes, 40);
    if (ndim < 1 || ndim > 7)
        throw DataError("BadMagic", "dim[0] outside [1,7]; file is corrupt or byte-swapped");

    Index3 dims{1, 1, 1};
    for (int a = 0; a < 3 && a < ndim; ++a) {
        const auto d = get<std::int16_t>(bytes, 40 + 2 * (a + 1));
        if (d <= 0) throw DataError("BadMagic", "dim[" + std::to_string(a + 1) + "] must be positive");
        dims[a] = d;
    }
    // trailing dims beyond 3 must be degenerate
    for (int a = 3; a < ndim; ++a) {
        const auto d = get<std::int16_t>(bytes, 40 + 2 * (a + 1));
        if (d > 1) throw DataError("UnsupportedDatatype", "multi-volume (dim>3) files are not supported");
    }

    const auto datatype = get<std::int16_t>(bytes, 70);
    const std::size_t esize = element_size(datatype);
    if (esize == 0)
        throw DataError("UnsupportedDatatype", "datatype code " + std::to_string(datatype));

    Vec3 spacing;
    for (int a = 0; a < 3; ++a) {
        spacing[a] = static_cast<double>(get<float>(bytes, 76 + 4 * (a + 1)));
        if (!(spacing[a] > 0.0))
            throw DataError("NonPositiveSpacing", "pixdim[" + std::to_string(a + 1) + "] = " + std::to_string(spacing[a]));
    }

    const float vox_offset_f = get<float>(bytes, 108);
    // ni1 headers carry the payload of their .img companion; this byte-level
    // API accepts the concatenated form with data at 352.
    std::size_t offset = n_plus_1 ? static_cast<std::size_t>(vox_offset_f) : kVoxOffset;
    if (offset < kVoxOffset) offset = kVoxOffset;

    const float scl_slope = get<float>(bytes, 112);
    const float scl_inter = get<float>(bytes, 116);

    Vec3 origin{0.0, 0.0, 0.0};
    const auto sform_code = get<std::int16_t>(bytes, 254);
    const auto qform_code = get<std::int16_t>(bytes, 252);
    if (sform_code > 0) {
        origin = {static_cast<double>(get<float>(bytes, 280 + 12)), static_cast<double>(get<float>(bytes, 296 + 12)),
                  static_cast<double>(get<float>(bytes, 312 + 12))};
    } else if (qform_code > 0) {
        origin = {static_cast<double>(get<float>(bytes, 268)), static_cast<double>(get<float>(bytes, 272)),
                  static_cast<double>(get<float>(bytes, 276))};
    }

    const std::size_t n = static_cast<std::size_t>(dims[0]) * dims[1] * dims[2];
    if (bytes.size() < offset + n * esize)
        throw DataError("TruncatedData", "payload holds fewer than dims product * element size bytes");

    VolumeGrid v;
    v.dims = dims;
    v.spacing = spacing;
    v.origin = origin;
    v.data.resize(n);

    const std::uint8_t* p = bytes.data() + offset;
    switch (datatype) {
        case 2:
            for (std::size_t i = 0; i < n; ++i) v.data[i] = static_cast<double>(p[i]);
            break;
        case 4:
            for (std::size_t i = 0; i < n; ++i) {
                std::int16_t x;
                std::memcpy(&x, p + 2 * i, 2);
                v.data[i] = static_cast<double>(x);
            }
            break;
        case 8:
            for (std::size_t i = 0; i < n; ++i) {
                std::int32_t x;
                std::memcpy(&x, p + 4 * i, 4);
                v.data[i] = static_cast<double>(x);
            }
            break;
        case 16:
            for (std::size_t i = 0; i < n; ++i) {
                float x;
                std::memcpy(&x, p + 4 * i, 4);
                v.data[i] = static_cast<double>(x);
            }
            break;
        case 64:
            for (std::size_t i = 0; i < n; ++i) {
                double x;
                std::memcpy(&x, p + 8 * i, 8);
                v.data[i] = x;
            }
            break;
        default: break;
    }

    if (scl_slope != 0.0f && !(scl_slope == 1.0f && scl_inter == 0.0f)) {
        for (double& x : v.data) x = static_cast<double>(scl_slope) * x + static_cast<double>(scl_inter);
    }

    v.validate();
    return v;
}

std::vector<std::uint8_t> write(const VolumeGrid& v) {
    v.validate();
    const std::size_t n = v.size();
    std::vector<std::uint8_t> b(kVoxOffset + n * 4, 0);

    put<std::int32_t>(b, 0, 348);
    put<std::int8_t>(b, 38, 'r');  // regular
    put<std::int16_t>(b, 40, 3);
    for (int a = 0; a < 3; ++a) put<std::int16_t>(b, 42 + 2 * a, static_cast<std::int16_t>(v.dims[a]));
    for (int a = 3; a < 7; ++a) put<std::int16_t>(b, 42 + 2 * a, 1);
    put<std::int16_t>(b, 70, 16);  // float32
    put<std::int16_t>(b, 72, 32);  // bitpix
    put<float>(b, 76, 1.0f);       // pixdim[0]: qfac
    for (int a = 0; a < 3; ++a) put<float>(b, 80 + 4 * a, static_cast<float>(v.spacing[a]));
    put<float>(b, 108, static_cast<float>(kVoxOffset));
    put<float>(b, 112, 1.0f);  // scl_slope
    put<float>(b, 116, 0.0f);  // scl_inter
    put<std::int8_t>(b, 123, 2);  // xyzt_units: mm

    static const char descrip[] = "deltarad";
    std::memcpy(b.data() + 148, descrip, sizeof(descrip));

    put<std::int16_t>(b, 252, 0);  // qform_code
    put<std::int16_t>(b, 254, 1);  // sform_code: scanner anatomical
    for (int r = 0; r < 3; ++r) {
        const std::size_t row = 280 + 16 * static_cast<std::size_t>(r);
        put<float>(b, row + 4 * static_cast<std::size_t>(r), static_cast<float>(v.spacing[r]));
        put<float>(b, row + 12, static_cast<float>(v.origin[r]));
    }
    std::memcpy(b.data() + 344, "n+1", 4);
    // bytes 348..351 stay zero: no header extension

    for (std::size_t i = 0; i < n; ++i) put<float>(b, kVoxOffset + 4 * i, static_cast<float>(v.data[i]));
    return b;
}

VolumeGrid read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw DataError("FileNotFound", path);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    try {
        return parse(bytes);
    } catch (const Error& e) {
        throw DataError(e.tag(), path + ": " + e.what());
    }
}

void write_file(const std::string& path, const VolumeGrid& v) {
    const auto bytes = write(v);
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw DataError("FileWriteFailed", path);
    f.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!f) throw DataError("FileWriteFailed", path);
}

MaskROI read_mask_file(const std::string& path, const std::string& label) {
    const VolumeGrid v = read_file(path);
    MaskROI m;
    m.dims = v.dims;
    m.spacing = v.spacing;
    m.origin = v.origin;
    m.label = label;
    m.voxels.resize(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) m.voxels[i] = v.data[i] != 0.0 ? 1 : 0;
    return m;
}

}  // namespace deltarad::nifti
