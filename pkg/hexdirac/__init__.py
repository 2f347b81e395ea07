from hexdirac.model import HexDirac

__all__ = ['HexDirac']
