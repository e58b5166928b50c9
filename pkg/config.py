import os

# --- Caminhos ---
# Diretório de dados do projeto (tabelas de exemplo e fixture de contagens).
DATA_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'data')
# Fixture versionada com as contagens "golden"; o verify compara contra ela.
GOLDENS_PATH = os.path.join(DATA_DIR, 'goldens.csv')

# --- Limites da Enumeração ---
# Ordem máxima para enumeração rotulada (sem rejeição de isomorfismo).
MAX_ORDER_LABELED = 5
# Ordem máxima quando a rejeição de isomorfismo está ligada.
MAX_ORDER_DEDUP = 6

# --- Padrões da CLI ---
# Maior expoente n testado quando o usuário não informa --n nem --n-max.
DEFAULT_N_MAX = 6
# Número de processos usados na enumeração.
DEFAULT_JOBS = 1
