import sys

from src.cli.app import run


def main():
    # 日志在 run() 里按 --progress 初始化，保证所有子命令格式一致
    sys.exit(run())


if __name__ == "__main__":
    main()
