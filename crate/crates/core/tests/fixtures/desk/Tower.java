class Base
{
    int level = 0;
}
class Floor1 extends Base
{
}
class Floor2 extends Floor1
{
}
class Floor3 extends Floor2
{
}
class Floor4 extends Floor3
{
}
class Floor5 extends Floor4
{
}
class Floor6 extends Floor5
{
    void top()
    {
        System.out.println("top floor");
    }
}
