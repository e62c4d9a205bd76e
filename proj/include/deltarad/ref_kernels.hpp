#ifndef DELTARAD_REF_KERNELS_HPP
#define DELTARAD_REF_KERNELS_HPP

#include "deltarad/features.hpp"
#include "deltarad/preprocess.hpp"

// Plain single-threaded implementations of the hot kernels. The OpenMP
// paths in the library must reproduce these exactly (integer counts) or to
// tight tolerance (floating-point accumulations); the benchmark tool times
// the two side by side.
namespace deltarad::ref {

MaskROI erode(const MaskROI& m, int connectivity);
MaskROI dilate(const MaskROI& m, int connectivity);

VolumeGrid normalize_by_reference(const VolumeGrid& v, const MaskROI& ref_mask);

GlcmData build_glcm(const DiscretizedVolume& d);
GlrlmData build_glrlm(const DiscretizedVolume& d);
GldmData build_gldm(const DiscretizedVolume& d, int alpha = 0);
NgtdmData build_ngtdm(const DiscretizedVolume& d);

struct Diameters {
    double d3 = 0, slice = 0, column = 0, row = 0;
};
Diameters max_diameters(const MaskROI& m);

}  // namespace deltarad::ref

#endif
