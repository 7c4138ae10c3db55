"""
The multitask network and its composite loss
============================================

One backbone and neck feed three heads: an anchor-free two-class detector at
strides 8/16/32, plus segmentation and depth decoders that share a single
stride-8 convolution before their own upsampling stacks. This script builds
the full model, inspects its outputs, and walks through the loss breakdown.
"""

import torch

from oosdsd.datamodel import OOSClass, OOSInstance
from oosdsd.losses import (
    BatchTargets,
    LossConfig,
    MultitaskCriterion,
    combined_total,
    instances_to_targets,
)
from oosdsd.network import NetworkConfig, build_network, decode_detections

torch.manual_seed(0)

# The default configuration enables all three branches.
cfg = NetworkConfig()
net = build_network(cfg)
print(f"parameters: {net.parameter_count():,}")
print(f"branches: {cfg.branch_tag()}")

# Inputs must be divisible by 32 (the deepest stride). Dense outputs come
# back at full input resolution; detection stays on its stride grids.
x = torch.rand(1, 3, 320, 320)
with torch.no_grad():
    out = net(x)
for det, stride in zip(out.det_raw, out.strides):
    print(f"  stride {stride:2d}: det grid {tuple(det.shape)}")
print(f"  seg logits  {tuple(out.seg_logits.shape)}")
print(f"  depth pred  {tuple(out.depth_pred.shape)}")

# Each detection cell emits 64 box-regression logits (four sides, sixteen
# distance bins each) and two class logits. Decoding applies the expected
# value over bins, confidence filtering, and per-class NMS.
dets = decode_detections(out.det_raw, conf_threshold=0.01)[0]
print(f"untrained network decodes {len(dets)} low-confidence boxes")

# Ablating a branch removes its parameters entirely rather than masking its
# loss, so branch ablations measure real capacity changes.
for with_seg, with_depth in ((False, False), (True, False), (False, True)):
    sub = NetworkConfig(with_seg=with_seg, with_depth=with_depth)
    print(f"  {sub.branch_tag():12s} {build_network(sub).parameter_count():,} params")

# The criterion consumes raw head outputs plus batch-aligned targets and
# returns one scalar and an unweighted per-task breakdown.
gt_labels, gt_bboxes, mask = instances_to_targets(
    [[OOSInstance(0.5, 0.55, 0.3, 0.4, OOSClass.NORMAL)]], 320
)
targets = BatchTargets(
    gt_labels=gt_labels,
    gt_bboxes=gt_bboxes,
    mask_gt=mask,
    seg=(torch.rand(1, 1, 320, 320) > 0.6).float(),
    depth=torch.full((1, 1, 320, 320), 0.5),
    valid=torch.ones(1, 1, 320, 320),
)
loss_cfg = LossConfig()
criterion = MultitaskCriterion(cfg.num_classes, cfg.reg_max, loss_cfg)
total, breakdown = criterion(net(x), targets)
print(f"\ntotal loss {total.item():.3f}")
print(f"  det ciou {breakdown.det_ciou:.3f}  det dfl {breakdown.det_dfl:.3f}  "
      f"det vfl {breakdown.det_vfl:.3f}")
print(f"  seg {breakdown.seg:.3f}  depth {breakdown.depth:.3f}")

# Task weights recombine the stored unweighted components, so reweighting
# never needs a second forward pass.
for weights in ((1.0, 1.0, 1.0), (1.0, 3.0, 0.5)):
    reweighted = combined_total(breakdown, LossConfig(task_weights=weights))
    print(f"  task weights {weights} -> total {reweighted:.3f}")

# Segmentation and depth loss kinds are selectable per run; this is the axis
# one of the ablation grids sweeps.
for seg_kind in ("dice", "bce", "mse", "l1"):
    alt = MultitaskCriterion(cfg.num_classes, cfg.reg_max, LossConfig(seg_loss=seg_kind))
    _, bd = alt(net(x), targets)
    print(f"  seg={seg_kind:4s} -> seg component {bd.seg:.4f}")
