"""
Example script demonstrating how to call and run hexdirac.
"""
import os

from hexdirac import HexDirac


def run(ini, command=None):

    # instantiate model
    hd = HexDirac(ini)

    # run intended configuration; Command in the file may be overridden here
    return hd.execute({'Command': command})


if __name__ == "__main__":

    # full path to parameterized config file
    ini = os.path.join(os.path.dirname(os.path.realpath(__file__)), 'strained_graphene.ini')

    # Dirac point of the reference medium, then the envelope validation
    for command in ('dirac-point', 'validate'):
        components = run(ini, command)
        print(command, components.summary)
