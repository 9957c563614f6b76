"""First jet prolongations and semi-holonomic jet modules.

J^1(V) sits on coordinates [V; p_+ (x) V] (footpoint first, then one slot per
p_+ basis root in positive-root order). Every homogeneous Z in p acts by one
formula,

  Z.(v, Z_1 (x) v_1) = (Z.v, Z_1 (x) Z.v_1 + [Z, Z_1] (x) v_1
                          + sum_{|eta_a| <= |Z|} eta_a (x) [Z, xi_a].v),

whose last sum is empty for grade zero; consistency of the induced higher
grade actions with commutators is a test, not an assumption.

Semi-holonomic prolongations are equalizer kernels inside J^1(Jbar^{k-1}),
computed exactly and re-coordinatized onto the free direct sum
(+)_{j<=k} (x)^j p_+ (x) V once the structural embedding is certified to span
the kernel.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .gradedla import GradedLieAlgebra, Label
from .linalg import Q, QONE, QZERO, SpMat
from .repmod import DimensionOverBudget, PModule


class UncertifiedInput(Exception):
    """A map without an equivariance certificate where one is required."""


class ShapeMismatch(Exception):
    """Matrix shape incompatible with the declared modules."""


@dataclass
class PModMap:
    """Linear map between PModules with an equivariance certificate."""

    source: PModule
    target: PModule
    mat: SpMat = field(repr=False)
    certified: bool = False
    residuals: dict = field(default_factory=dict, repr=False)

    @property
    def ok(self) -> bool:
        return self.certified


def check_equivariance(mat: SpMat, source: PModule, target: PModule) -> PModMap:
    """Certify mat as a P-module map; labels checked are those the two
    modules share. Returns the map with certificate or residual matrices."""
    if mat.nrows != target.dim or mat.ncols != source.dim:
        raise ShapeMismatch(
            f"map is {mat.nrows}x{mat.ncols}, expected {target.dim}x{source.dim}"
        )
    residuals = {}
    for lab in source.actions:
        if lab not in target.actions:
            continue
        res = target.actions[lab] @ mat - mat @ source.actions[lab]
        if not res.is_zero():
            residuals[lab] = res
    return PModMap(
        source=source, target=target, mat=mat,
        certified=not residuals, residuals=residuals,
    )


@dataclass
class JetModule(PModule):
    """J^1 of a PModule; coordinates [base; p_+ (x) base]."""

    base: PModule = None


def jet1(V: PModule) -> JetModule:
    g = V.g
    roots = g.pplus_roots()
    d = len(roots)
    dv = V.dim
    dim = (1 + d) * dv
    dual = g.dual_bases()

    def slot(a: int) -> int:
        return (1 + a) * dv

    acts: dict[Label, SpMat] = {}
    for lab in g.p_labels():
        w = g.grade_of(lab)
        A = V.actions[lab]
        out = SpMat(dim, dim)
        for i, r in A.rows.items():
            out.rows[i] = dict(r)
        for a in range(d):
            off = slot(a)
            for i, r in A.rows.items():
                orow = out.rows.setdefault(off + i, {})
                for j, v in r.items():
                    orow[off + j] = orow.get(off + j, QZERO) + v
            # [Z, eta_a] within p_+
            for blab, c in g.bracket_labels(lab, ("e", roots[a])).items():
                if blab[0] != "e":
                    continue
                b = roots.index(blab[1])
                boff = slot(b)
                for i in range(dv):
                    orow = out.rows.setdefault(boff + i, {})
                    orow[slot(a) + i] = orow.get(slot(a) + i, QZERO) + c
        if w >= 1:
            for a in range(d):
                if g.grade_of(("e", roots[a])) > w:
                    continue
                # eta_a (x) [Z, xi_a] . v0 from the footpoint
                corr = SpMat(dv, dv)
                for blab, c in g.bracket_labels(lab, ("f", roots[a])).items():
                    corr = corr + V.actions[blab].scale(c)
                corr = corr.scale(QONE / dual.d[a])
                off = slot(a)
                for i, r in corr.rows.items():
                    orow = out.rows.setdefault(off + i, {})
                    for j, v in r.items():
                        orow[j] = orow.get(j, QZERO) + v
        for i in list(out.rows):
            out.rows[i] = {j: v for j, v in out.rows[i].items() if v}
            if not out.rows[i]:
                del out.rows[i]
        acts[lab] = out

    e_grades = list(V.e_grades)
    weights = list(V.weights) if V.weights is not None else None
    for a in range(d):
        ga = Q(g.grade_of(("e", roots[a])))
        e_grades.extend([x + ga for x in V.e_grades])
        if weights is not None:
            rw = g.rs.root_to_weight(roots[a])
            weights.extend(
                tuple(x + y for x, y in zip(wv, rw)) for wv in V.weights
            )
    return JetModule(
        g=g, dim=dim, e_grades=tuple(e_grades), actions=acts,
        weights=None if weights is None else tuple(weights),
        base=V,
    )


def jet1_of_map(f: PModMap) -> PModMap:
    """J^1(f) = (f, id (x) f); functorial, certificate carries over."""
    if not f.certified:
        raise UncertifiedInput("jet1_of_map needs a certified map")
    js, jt = jet1(f.source), jet1(f.target)
    d = len(f.source.g.pplus_roots())
    mat = SpMat.block_diag([f.mat] + [f.mat] * d)
    return PModMap(source=js, target=jt, mat=mat, certified=True)


def jet1_map_matrix(g: GradedLieAlgebra, fmat: SpMat) -> SpMat:
    """The matrix of J^1(f) without building modules."""
    d = len(g.pplus_roots())
    return SpMat.block_diag([fmat] * (1 + d))


@dataclass
class SemiHolonomicJet:
    """Jbar^r(V) in direct-sum coordinates, with the certified embedding into
    J^1(Jbar^{r-1})."""

    r: int
    V: PModule
    module: PModule = field(repr=False)
    slot_dims: tuple[int, ...] = ()
    iota: SpMat | None = field(default=None, repr=False)
    ambient: PModule | None = field(default=None, repr=False)  # J^1(Jbar^{r-1})
    prev: "SemiHolonomicJet | None" = None
    proj_jet: SpMat | None = field(default=None, repr=False)
    proj_foot: SpMat | None = field(default=None, repr=False)

    def projection_pair(self):
        """The two maps Jbar^r -> J^1(Jbar^{r-2}) whose equality cuts out the
        semi-holonomic subspace (None when r < 2)."""
        if self.proj_jet is None:
            return None
        return self.proj_jet, self.proj_foot


def _ds_dims(d: int, dv: int, r: int) -> list[int]:
    return [d**j * dv for j in range(r + 1)]


def truncation_matrix(d: int, dv: int, r: int) -> SpMat:
    """pi_r: DS_r -> DS_{r-1}, drop the top slot."""
    dims = _ds_dims(d, dv, r)
    keep = sum(dims[:-1])
    out = SpMat(keep, sum(dims))
    for i in range(keep):
        out.set(i, i, 1)
    return out


def semiholonomic(V: PModule, r: int, max_dim: int = 20000) -> SemiHolonomicJet:
    """Jbar^r(V); raises DimensionOverBudget before building anything big."""
    assert r >= 1
    g = V.g
    d = len(g.pplus_roots())
    total = sum(_ds_dims(d, V.dim, r))
    if total > max_dim:
        raise DimensionOverBudget(
            f"dim Jbar^{r} = {total} exceeds budget {max_dim}"
        )
    cur = SemiHolonomicJet(
        r=1, V=V, module=jet1(V), slot_dims=tuple(_ds_dims(d, V.dim, 1)),
    )
    for k in range(2, r + 1):
        cur = _extend(cur)
    return cur


def _extend(prev: SemiHolonomicJet) -> SemiHolonomicJet:
    """One step Jbar^{k-1} -> Jbar^k."""
    V = prev.V
    g = V.g
    d = len(g.pplus_roots())
    dv = V.dim
    k = prev.r + 1
    amb = jet1(prev.module)
    prev_dim = prev.module.dim
    # two maps J^1(Jbar^{k-1}) -> J^1(Jbar^{k-2})
    pi_prev = truncation_matrix(d, dv, k - 1)  # Jbar^{k-1} -> Jbar^{k-2} in DS
    m_jet = SpMat.block_diag([pi_prev] * (1 + d))
    iota_prev = prev.iota if prev.iota is not None else SpMat.identity(prev_dim)
    foot = SpMat(prev_dim, amb.dim)
    for i in range(prev_dim):
        foot.set(i, i, 1)
    m_foot = iota_prev @ foot
    diff = m_jet - m_foot

    dims = _ds_dims(d, dv, k)
    new_dim = sum(dims)
    offs = [sum(dims[:j]) for j in range(k + 1)]
    prev_offs = [sum(dims[:j]) for j in range(k)]  # same leading blocks
    iota = SpMat(amb.dim, new_dim)
    # footpoint copies of slots 0..k-1
    for j in range(k):
        for i in range(dims[j]):
            iota.set(prev_offs[j] + i, offs[j] + i, 1)
    # tensor copies of slots 1..k: slot j = p_+ (x) T_{j-1}
    for j in range(1, k + 1):
        for a in range(d):
            for t in range(dims[j - 1]):
                amb_row = prev_dim * (1 + a) + prev_offs[j - 1] + t
                col = offs[j] + a * dims[j - 1] + t
                iota.set(amb_row, col, iota.get(amb_row, col) + 1)
    assert (diff @ iota).is_zero()
    assert diff.rank() == amb.dim - new_dim  # kernel is exactly the DS model
    # selection recovering DS coordinates from a kernel vector
    sel = SpMat(new_dim, amb.dim)
    for j in range(k):
        for i in range(dims[j]):
            sel.set(offs[j] + i, prev_offs[j] + i, 1)
    for a in range(d):
        for t in range(dims[k - 1]):
            sel.set(
                offs[k] + a * dims[k - 1] + t,
                prev_dim * (1 + a) + prev_offs[k - 1] + t,
                1,
            )
    assert (sel @ iota) == SpMat.identity(new_dim)
    acts = {}
    for lab, A in amb.actions.items():
        restricted = A @ iota
        assert (diff @ restricted).is_zero()  # action preserves the equalizer
        acts[lab] = sel @ restricted
    pick = [0] * new_dim
    for j in range(k):
        for i in range(dims[j]):
            pick[offs[j] + i] = prev_offs[j] + i
    for a in range(d):
        for t in range(dims[k - 1]):
            pick[offs[k] + a * dims[k - 1] + t] = prev_dim * (1 + a) + prev_offs[k - 1] + t
    mod = PModule(
        g=g,
        dim=new_dim,
        e_grades=tuple(amb.e_grades[i] for i in pick),
        actions=acts,
        weights=None if amb.weights is None else tuple(amb.weights[i] for i in pick),
    )
    return SemiHolonomicJet(
        r=k, V=V, module=mod, slot_dims=tuple(dims), iota=iota, ambient=amb,
        prev=prev, proj_jet=m_jet @ iota, proj_foot=m_foot @ iota,
    )


def jbar_of_map(g: GradedLieAlgebra, fmat: SpMat, k: int) -> SpMat:
    """Jbar^k(f) in DS coordinates: blockdiag(id_{(x)^j p_+} (x) f)."""
    d = len(g.pplus_roots())
    blocks = [fmat]
    for j in range(1, k + 1):
        blocks.append(SpMat.identity(d**j).kron(fmat))
    return SpMat.block_diag(blocks)


def chain_embedding(g: GradedLieAlgebra, dv: int, k: int) -> SpMat:
    """DS_{k+1}(W) -> DS_k(J^1 W): the inclusion Jbar^{k+1}(W) in
    Jbar^k(J^1 W) in direct-sum coordinates (dv = dim W)."""
    d = len(g.pplus_roots())
    src_dims = _ds_dims(d, dv, k + 1)
    src_offs = [sum(src_dims[:j]) for j in range(k + 2)]
    jdim = (1 + d) * dv
    tgt_dims = _ds_dims(d, jdim, k)
    tgt_offs = [sum(tgt_dims[:j]) for j in range(k + 1)]
    out = SpMat(sum(tgt_dims), sum(src_dims))
    for j in range(k + 2):
        dj = d**j if j <= k + 1 else 0
        # footpoint chain: T_j(W) -> (x)^j p_+ (x) (W part of J^1 W), j <= k
        if j <= k:
            for m in range(d**j):
                for s in range(dv):
                    out.set(
                        tgt_offs[j] + m * jdim + s,
                        src_offs[j] + m * dv + s,
                        1,
                    )
        # tensor chain: T_j(W) = (x)^{j-1} p_+ (x) (p_+ (x) W part), j >= 1
        if 1 <= j <= k + 1:
            for mprime in range(d ** (j - 1)):
                for a in range(d):
                    for s in range(dv):
                        row = tgt_offs[j - 1] + mprime * jdim + dv + a * dv + s
                        col = src_offs[j] + (mprime * d + a) * dv + s
                        out.set(row, col, out.get(row, col) + 1)
    return out
