"""
Synthetic shelf scenes with exact ground truth
==============================================

Every training signal in this package can be exercised without real retail
footage. The generator renders shelf scenes procedurally and returns pixel
perfect annotations for all three tasks: out-of-stock boxes, a product
segmentation mask, and a relative depth map.
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from oosdsd.datamodel import OOSClass
from oosdsd.synthgen import SceneSpec, generate_dataset, generate_scene

out_dir = Path(__file__).resolve().parent / "out"
out_dir.mkdir(exist_ok=True)

# A scene is a shelf grid. Each slot either holds a full product stack, an
# empty slot (class "normal": bare back panel visible), or a receded stack
# (class "front": product present but pushed to the back rail).
spec = SceneSpec(
    image_size=320,
    rows=3,
    slots_per_row=4,
    oos_slots=((0, 1, OOSClass.NORMAL), (2, 2, OOSClass.FRONT)),
    seed=7,
)
record = generate_scene(spec)

print(f"image {record.image.shape}, {len(record.boxes)} boxes")
for inst in record.boxes:
    print(f"  {inst.cls.name.lower():6s} center ({inst.x:.3f}, {inst.y:.3f}) "
          f"size ({inst.w:.3f} x {inst.h:.3f})")

# The segmentation marks front-row products only. A receded stack sits at
# back-rail depth, so it is absent from the mask by construction; that is
# exactly what makes the "front" class visible to the depth branch.
seg_px = record.seg.pixels
depth_px = record.depth.pixels
print(f"product pixels: {int(seg_px.sum())}")
print(f"depth range: [{depth_px.min():.2f}, {depth_px.max():.2f}]")

# Draw the three annotation layers side by side.
fig, axes = plt.subplots(1, 3, figsize=(13, 4.2))
axes[0].imshow(record.image)
h, w = record.shape
for inst in record.boxes:
    x1, y1, x2, y2 = inst.corners()
    color = "tab:red" if inst.cls is OOSClass.NORMAL else "tab:orange"
    axes[0].add_patch(plt.Rectangle(
        (x1 * w, y1 * h), (x2 - x1) * w, (y2 - y1) * h,
        fill=False, color=color, lw=2,
    ))
    axes[0].text(x1 * w, y1 * h - 3, inst.cls.name.lower(), color=color, fontsize=9)
axes[0].set_title("image + OOS boxes")
axes[1].imshow(seg_px, cmap="gray")
axes[1].set_title("product segmentation")
axes[2].imshow(depth_px, cmap="viridis", vmin=0, vmax=1)
axes[2].set_title("relative depth")
for ax in axes:
    ax.axis("off")
fig.tight_layout()
fig.savefig(out_dir / "scene_annotations.png", dpi=110)
plt.close(fig)
print(f"wrote {out_dir / 'scene_annotations.png'}")

# generate_dataset randomizes layout per scene and guarantees that both OOS
# classes appear, which keeps two-class metrics meaningful on tiny pools.
records = generate_dataset(6, seed=3, image_size=256)
counts = {cls: 0 for cls in OOSClass}
for r in records:
    for inst in r.boxes:
        counts[inst.cls] += 1
print("class counts over 6 scenes:", {c.name.lower(): n for c, n in counts.items()})

# Passing out_root writes the on-disk layout every CLI command consumes:
# images/, labels/, seg/, depth/ plus dataset.json.
root = out_dir / "mini_dataset"
generate_dataset(4, seed=11, image_size=256, out_root=root)
print("dataset files:", sorted(p.name for p in root.iterdir()))
