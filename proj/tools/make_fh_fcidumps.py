#!/usr/bin/env python3
"""Generate valence active-space FCIDUMPs for the FH dimer and FH-H2O.

RHF/aug-cc-pVDZ with pyscf. Active space = valence occupied orbitals (1s
cores frozen into E_core) plus the valence virtual orbitals, taken as the
part of the intrinsic-atomic-orbital (IAO, MINAO reference) space orthogonal
to the occupied orbitals. Occupied and virtual blocks are Pipek-Mezey
localized separately, assigned to fragments by population, and ordered
[A occ, B occ, A virt, B virt] so the aufbau determinant is the RHF
reference.

The 100 Angstrom dimers use the block direct sum of the standalone monomer
orbitals, so their fragment blocks coincide exactly with the monomer files.

Usage: make_fh_fcidumps.py OUTDIR
"""

import json
import sys
from pathlib import Path

import numpy as np
from pyscf import ao2mo, gto, lo, mcscf, scf
from pyscf.lo import iao
from pyscf.tools import fcidump

BASIS = "aug-cc-pvdz"
FAR = 100.0  # Angstrom, shortest inter-fragment atom distance

SYSTEMS = {
    "fh_dimer": {
        "A": [("F", (-0.355909, 0.404037, 0.199053)), ("H", (0.112061, -0.309544, -0.156637))],
        "B": [("F", (-3.008949, -0.078707, -0.096402)), ("H", (-2.130203, 0.184214, 0.053986))],
    },
    "fh_h2o": {
        "A": [("O", (-2.451734, 0.852831, -0.885154)), ("H", (-1.585104, 0.709253, -0.491503)),
              ("H", (-2.774601, 1.674026, -0.500774))],
        "B": [("F", (-4.071275, -1.154030, -0.438062)), ("H", (-3.491540, -0.434027, -0.626687))],
    },
}

N_CORE = {"F": 1, "O": 1, "H": 0}


def make_mol(atoms):
    return gto.M(atom=[(s, xyz) for s, xyz in atoms], basis=BASIS, unit="Angstrom",
                 verbose=0)


def run_rhf(mol):
    mf = scf.RHF(mol)
    mf.conv_tol = 1e-12
    mf.kernel()
    if not mf.converged:
        raise RuntimeError("RHF did not converge")
    return mf


def fock_order(mf, c):
    f = mf.get_fock()
    e = np.einsum("pi,pq,qi->i", c, f, c)
    return c[:, np.argsort(e, kind="stable")]


def pm(mol, c):
    if c.shape[1] < 2:
        return c
    loc = lo.PM(mol, c)
    loc.conv_tol = 1e-10
    return loc.kernel()


def active_blocks(mf, ncore):
    """Returns (core, valence occupied, valence virtual) coefficient blocks."""
    mol = mf.mol
    nocc = mol.nelectron // 2
    c = mf.mo_coeff
    core = c[:, :ncore]
    occ = c[:, :nocc]
    vir = c[:, nocc:]
    s = mf.get_ovlp()
    iaos = iao.iao(mol, occ)
    nvv = iaos.shape[1] - nocc
    u, _, _ = np.linalg.svd(vir.T @ s @ iaos)
    vv = vir @ u[:, :nvv]
    return core, pm(mol, c[:, ncore:nocc]), pm(mol, vv)


def fragment_of(mol, s, c, frag_atoms):
    """Mulliken weight of each orbital on the atoms in frag_atoms."""
    sl = mol.aoslice_by_atom()
    w = np.zeros(c.shape[1])
    sc = s @ c
    for ia in frag_atoms:
        p0, p1 = sl[ia][2], sl[ia][3]
        w += np.einsum("pi,pi->i", c[p0:p1], sc[p0:p1])
    return w


def write(path, mf, core, active, nelec):
    mc = mcscf.CASCI(mf, active.shape[1], nelec)
    mo = np.hstack([core, active])
    h1, ecore = mc.get_h1eff(mo)
    eri = ao2mo.restore(1, mc.get_h2eff(mo), active.shape[1])
    fcidump.from_integrals(str(path), h1, eri, active.shape[1], nelec, ecore, ms=0,
                           tol=1e-15, float_format="%.17e")
    energy = mc.kernel(mo)[0]
    return energy


def monomer(atoms):
    mol = make_mol(atoms)
    mf = run_rhf(mol)
    ncore = sum(N_CORE[s] for s, _ in atoms)
    core, occ, vv = active_blocks(mf, ncore)
    occ, vv = fock_order(mf, occ), fock_order(mf, vv)
    return mol, mf, core, occ, vv


def far_geometry(a, b):
    ra = np.array([x for _, x in a])
    rb = np.array([x for _, x in b])
    axis = rb.mean(axis=0) - ra.mean(axis=0)
    axis /= np.linalg.norm(axis)
    dmin = min(np.linalg.norm(x - y) for x in ra for y in rb)
    # push B out until the shortest contact is FAR (monotone in the shift)
    lo_, hi = 0.0, 2 * FAR
    for _ in range(200):
        mid = 0.5 * (lo_ + hi)
        d = min(np.linalg.norm(x - (y + mid * axis)) for x in ra for y in rb)
        lo_, hi = (mid, hi) if d < FAR else (lo_, mid)
    shift = hi * axis
    return [(s, tuple(np.array(x) + shift)) for s, x in b], dmin


def write_map(path, slots):
    with open(path, "w") as f:
        f.write("# dimer_orbital fragment fragment_orbital\n")
        for p, (frag, local) in enumerate(slots):
            f.write(f"{p} {frag} {local}\n")


def build(name, layout, outdir, manifest):
    a, b = layout["A"], layout["B"]
    mono = {}
    for tag, atoms in (("A", a), ("B", b)):
        mol, mf, core, occ, vv = monomer(atoms)
        nelec = 2 * occ.shape[1]
        e = write(outdir / f"{name}_{tag}.fcidump", mf, core, np.hstack([occ, vv]), nelec)
        mono[tag] = dict(mol=mol, mf=mf, core=core, occ=occ, vv=vv)
        manifest[f"{name}_{tag}"] = {"norb": occ.shape[1] + vv.shape[1], "nelec": nelec,
                                     "e_rhf": mf.e_tot, "e_casci": e}

    # bonded dimer: dimer RHF, localized and assigned by population
    mol = make_mol(a + b)
    mf = run_rhf(mol)
    ncore = sum(N_CORE[s] for s, _ in a + b)
    core, occ, vv = active_blocks(mf, ncore)
    s = mf.get_ovlp()
    frag_a = list(range(len(a)))
    blocks = {}
    for role, c in (("occ", occ), ("vir", vv)):
        w = fragment_of(mol, s, c, frag_a)
        for tag, sel in (("A", w > 0.5), ("B", w <= 0.5)):
            blocks[(tag, role)] = fock_order(mf, c[:, sel])
    for tag in ("A", "B"):
        for role, key in (("occ", "occ"), ("vir", "vv")):
            want = mono[tag][key].shape[1]
            got = blocks[(tag, role)].shape[1]
            if want != got:
                raise RuntimeError(f"{name}: fragment {tag} {role} count {got} != {want}")
    order = [("A", "occ"), ("B", "occ"), ("A", "vir"), ("B", "vir")]
    active = np.hstack([blocks[k] for k in order])
    slots = []
    for tag, role in order:
        n_occ = mono[tag]["occ"].shape[1]
        for j in range(blocks[(tag, role)].shape[1]):
            slots.append((tag, j if role == "occ" else n_occ + j))
    nelec = 2 * occ.shape[1]
    e = write(outdir / f"{name}.fcidump", mf, core, active, nelec)
    write_map(outdir / f"{name}.orbmap", slots)
    manifest[name] = {"norb": active.shape[1], "nelec": nelec, "e_rhf": mf.e_tot,
                      "e_casci": e}

    # far dimer: direct sum of monomer orbitals
    b_far, dmin = far_geometry(a, b)
    mol = make_mol(a + b_far)
    mf = scf.RHF(mol)
    na = mono["A"]["mol"].nao
    nb = mono["B"]["mol"].nao
    if na + nb != mol.nao:
        raise RuntimeError("AO count mismatch for the far dimer")

    def lift(tag, key):
        m = mono[tag][key]
        full = np.zeros((mol.nao, m.shape[1]))
        if tag == "A":
            full[:na] = m
        else:
            full[na:] = m
        return full

    core = np.hstack([lift("A", "core"), lift("B", "core")])
    active = np.hstack([lift(t, k) for t, k in
                        (("A", "occ"), ("B", "occ"), ("A", "vv"), ("B", "vv"))])
    slots = []
    for tag, role in order:
        n_occ = mono[tag]["occ"].shape[1]
        n = mono[tag]["occ" if role == "occ" else "vv"].shape[1]
        for j in range(n):
            slots.append((tag, j if role == "occ" else n_occ + j))
    smax = np.abs(np.asarray(mol.intor("int1e_ovlp"))[:na, na:]).max()
    e = write(outdir / f"{name}_far.fcidump", mf, core, active, nelec)
    write_map(outdir / f"{name}_far.orbmap", slots)
    manifest[f"{name}_far"] = {"norb": active.shape[1], "nelec": nelec, "e_casci": e,
                               "max_interfragment_ao_overlap": float(smax),
                               "bonded_shortest_contact_angstrom": float(dmin)}


def main():
    outdir = Path(sys.argv[1] if len(sys.argv) > 1 else ".")
    outdir.mkdir(parents=True, exist_ok=True)
    manifest = {"basis": BASIS, "far_contact_angstrom": FAR}
    for name, layout in SYSTEMS.items():
        build(name, layout, outdir, manifest)
    with open(outdir / "fh_manifest.json", "w") as f:
        json.dump(manifest, f, indent=1)
    print(json.dumps(manifest, indent=1))


if __name__ == "__main__":
    main()
