from .contraction import Contraction, build_contraction, verify_contraction
from .trees import TransferredStructure, check_transfer, partitions, transfer
