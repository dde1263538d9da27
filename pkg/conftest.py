import os

import django

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'grep_suite.settings')
django.setup()
