from django.apps import AppConfig


class CdcConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "cdc"
    verbose_name = "Cycle double cover solver"
