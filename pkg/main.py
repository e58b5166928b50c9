import sys
import os

# Adiciona o diretório raiz ao path do sistema para permitir importações absolutas
# de qualquer lugar que o script seja executado.
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__))))

import config
from src.cli import cli_manager


def main():
    """
    Função principal que prepara o ambiente e repassa os argumentos à CLI.
    """
    # Garante que o diretório de dados exista (a fixture de contagens mora nele).
    os.makedirs(config.DATA_DIR, exist_ok=True)
    sys.exit(cli_manager.main(sys.argv[1:]))


if __name__ == '__main__':
    main()
