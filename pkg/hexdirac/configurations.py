"""
Model configurations for hexdirac.

@Project: hexdirac 0.1

License:  BSD 2-Clause
"""

import logging

from hexdirac.components import Components


class ConfigRunner:
    """
    Run the stage selected by the configuration's Command.

    Commands map onto Components methods:

        'bands'             band table along a path of high symmetry points
        'dirac-point'       Dirac point, bifurcation coefficients, cone check
        'landau'            fibre spectrum against the Landau levels
        'strain-fields'     pseudo gauge fields of a deformation
        'simulate'          wave packet evolution in a gauge field
        'validate'          envelope error convergence study
        'expansion-check'   second order remainder of the operator expansion

    The closing manifest is written whether or not the stage passes its
    acceptance gate.
    """

    COMMANDS = {
        'bands': 'bands',
        'dirac-point': 'dirac_point',
        'landau': 'landau',
        'strain-fields': 'strain_fields',
        'simulate': 'simulate',
        'validate': 'validate',
        'expansion-check': 'expansion_check',
    }

    def __init__(self, config):
        """
        :param config:      Configuration object generated from user-defined config.ini file
        """
        self.config = config
        self.method = self.COMMANDS[config.Command]

    def run(self):
        """
        Run the selected stage.

        :return:   Components object holding the stage results in `results`
        """
        c = Components(self.config)
        logging.info("Running stage '{}'".format(self.config.Command))
        try:
            c.results = getattr(c, self.method)()
        finally:
            c.finish()
        return c
