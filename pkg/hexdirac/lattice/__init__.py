from hexdirac.lattice.geometry import HoneycombLattice, build_lattice, reduce_to_bz, rotation_image_index

__all__ = ['HoneycombLattice', 'build_lattice', 'reduce_to_bz', 'rotation_image_index']
