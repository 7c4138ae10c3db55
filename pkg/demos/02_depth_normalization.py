"""
Depth map normalization
=======================

Monocular relative depth is only defined up to a per-image scale: the same
shelf photographed twice can come back with very different intensity ranges.
Supervising a depth branch on such maps asks the network to predict a number
the image does not contain. Normalization anchors every map to the same
reference: rescale so the mean depth over product pixels equals 0.5.
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from oosdsd.datamodel import DepthMap, SegmentationMap
from oosdsd.depthnorm import mean_product_depth, normalize_dataset, normalize_depth
from oosdsd.synthgen import SceneSpec, generate_scene

out_dir = Path(__file__).resolve().parent / "out"
out_dir.mkdir(exist_ok=True)

# Start with the 2x2 worked example. Product pixels are the top row, their
# mean is (0.2 + 0.4) / 2 = 0.3, so the scale factor is 0.5 / 0.3 = 5/3.
depth = DepthMap(np.array([[0.2, 0.4], [0.6, 0.8]]))
seg = SegmentationMap(np.array([[1, 1], [0, 0]], dtype=np.uint8))
result = normalize_depth(depth, seg)
print(f"mean product depth {result.mean_product_depth:.4f}, "
      f"factor {result.scale_factor:.4f}")
print("normalized map:")
print(result.normalized.pixels)

# Note the 0.8 became 4/3. Values are deliberately not clipped: clipping
# would silently break the mean-0.5 anchor the loss relies on.

# Now the realistic version: render the same shelf twice and give the second
# copy a halved global depth scale, mimicking two independent pseudo-label
# passes that disagree on range.
spec = SceneSpec(image_size=256, rows=2, slots_per_row=3, seed=21)
rec_a = generate_scene(spec, image_id="shelf_a")
rec_b = generate_scene(
    SceneSpec(image_size=256, rows=2, slots_per_row=3, seed=21, depth_scale=0.5),
    image_id="shelf_b",
)
mean_a = mean_product_depth(rec_a.depth, rec_a.seg)
mean_b = mean_product_depth(rec_b.depth, rec_b.seg)
print(f"\nraw mean product depth: shelf_a {mean_a:.3f}, shelf_b {mean_b:.3f}")

normalized, report = normalize_dataset([rec_a, rec_b])
print(f"normalization factors: { {k: round(v, 3) for k, v in report.factors.items()} }")
for rec in normalized:
    post = (rec.seg.pixels * rec.depth.pixels).sum() / rec.seg.pixels.sum()
    print(f"  {rec.image_id}: mean product depth after normalization {post:.6f}")

# Same scene, same geometry; identical targets only after normalization.
fig, axes = plt.subplots(2, 2, figsize=(8.6, 8))
for row, (label, pair) in enumerate(
    (("raw", (rec_a, rec_b)), ("normalized", tuple(normalized)))
):
    for col, rec in enumerate(pair):
        im = axes[row, col].imshow(rec.depth.pixels, cmap="viridis", vmin=0, vmax=1.1)
        axes[row, col].set_title(f"{rec.image_id} ({label})")
        axes[row, col].axis("off")
fig.colorbar(im, ax=axes.ravel().tolist(), shrink=0.8)
fig.savefig(out_dir / "depth_normalization.png", dpi=110)
plt.close(fig)
print(f"\nwrote {out_dir / 'depth_normalization.png'}")
