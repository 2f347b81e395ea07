"""
Module to write output data files.

CSV tables go through pandas with a fixed float format, manifests are JSON
with sorted keys, density images are binary portable graymaps. Nothing
written here carries a timestamp.

@Project: hexdirac 0.1

License:  BSD 2-Clause
"""

import os
import json
import logging

import numpy as np
import pandas as pd

from hexdirac.utils.general import to_builtin

FLOAT_FORMAT = '%.12e'


class OutWriter:
    """Write the artifacts of one run into its output folder."""

    def __init__(self, settings):
        """
        :param settings:    parsed settings from input configuration file
        """
        self.out_folder = settings.OutputFolder
        self.write_images = settings.WriteImages
        self.header = {
            'project': settings.ProjectName,
            'command': settings.Command,
            'config': settings.document,
            'config_hash': settings.hash,
            'seed': settings.Seed,
            'tolerances': settings.tolerances(),
        }
        self.artifacts = []

        if not os.path.isdir(self.out_folder):
            os.makedirs(self.out_folder)

    def path(self, name):
        return os.path.join(self.out_folder, name)

    def write_csv(self, df, name):
        """Write a DataFrame with a deterministic float format."""
        filename = self.path(name)
        df.to_csv(filename, index=False, float_format=FLOAT_FORMAT)
        self.artifacts.append(name)
        logging.debug("Wrote {} ({} rows)".format(filename, len(df)))
        return filename

    def write_json(self, obj, name, with_header=True):
        """Write a JSON document, prefixed with the run header."""
        doc = dict(self.header) if with_header else {}
        doc.update(obj)
        filename = self.path(name)
        with open(filename, 'w') as f:
            json.dump(doc, f, sort_keys=True, indent=2, default=to_builtin)
        self.artifacts.append(name)
        logging.debug("Wrote {}".format(filename))
        return filename

    def write_grid_csv(self, grid, columns, name):
        """One row per grid point: Y1, Y2 and the given real columns."""
        data = {'Y1': grid.Y1.reshape(-1), 'Y2': grid.Y2.reshape(-1)}
        for key, value in columns.items():
            data[key] = np.asarray(value).reshape(-1)
        return self.write_csv(pd.DataFrame(data), name)

    def write_spinor_csv(self, spinor, name):
        """Snapshot table Y1, Y2, Re a1, Im a1, Re a2, Im a2."""
        return self.write_grid_csv(spinor.grid, {
            're_a1': spinor.a1.real, 'im_a1': spinor.a1.imag,
            're_a2': spinor.a2.real, 'im_a2': spinor.a2.imag}, name)

    def write_pgm(self, values, name):
        """Binary 8-bit portable graymap scaled to the maximum of values (no-op unless images are enabled)."""
        if not self.write_images:
            return None
        values = np.asarray(values, dtype=float)
        peak = np.max(values)
        scaled = np.zeros(values.shape) if peak <= 0 else values / peak
        pixels = np.clip(np.rint(255.0 * scaled), 0, 255).astype(np.uint8)
        # rows of the image run along Y2, top row is the largest Y2
        pixels = pixels.T[::-1]
        filename = self.path(name)
        with open(filename, 'wb') as f:
            f.write('P5\n{} {}\n255\n'.format(pixels.shape[1], pixels.shape[0]).encode('ascii'))
            f.write(pixels.tobytes())
        self.artifacts.append(name)
        return filename

    def write_manifest(self, summary):
        """Closing manifest listing every artifact of the run."""
        summary = dict(summary)
        summary['artifacts'] = sorted(self.artifacts)
        return self.write_json(summary, 'manifest.json')


def write_error(folder, error, exit_code):
    """error.json for a failed run."""
    if not os.path.isdir(folder):
        os.makedirs(folder)
    doc = {'error': type(error).__name__, 'message': str(error), 'key': getattr(error, 'key', None),
           'exit_code': exit_code}
    with open(os.path.join(folder, 'error.json'), 'w') as f:
        json.dump(doc, f, sort_keys=True, indent=2)
